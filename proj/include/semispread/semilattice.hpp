#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semispread {

/// Raw lattice document: ids plus the generating inequalities, verbatim.
struct SemilatticeSpec {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> le;
};

class LatticeError : public std::runtime_error {
 public:
  enum class Kind {
    MalformedDocument,
    DuplicateId,
    UnknownIdInPair,
    NotAPartialOrder,
    NotAJoinSemilattice,
    InternalInvariantFailure,
  };

  LatticeError(Kind kind, std::string message, std::string first = {}, std::string second = {})
      : std::runtime_error(std::move(message)), kind_(kind), first_(std::move(first)), second_(std::move(second)) {}

  Kind kind() const { return kind_; }
  /// Offending id(s), when the error names a pair.
  const std::string& first() const { return first_; }
  const std::string& second() const { return second_; }

 private:
  Kind kind_;
  std::string first_;
  std::string second_;
};

std::string_view to_string(LatticeError::Kind kind);

/**
 * A validated finite join-semilattice. Elements are addressed by dense
 * indices in document order; `leq` is the reflexive-transitive closure of
 * the generators and `join` is total.
 */
class JoinTable {
 public:
  JoinTable() = default;

  std::size_t size() const { return ids_.size(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(std::size_t i) const { return ids_[i]; }
  std::size_t index_of(std::string_view id) const;

  bool leq(std::size_t a, std::size_t b) const { return order_[a * size() + b] != 0; }
  bool less(std::size_t a, std::size_t b) const { return a != b && leq(a, b); }
  std::size_t join(std::size_t a, std::size_t b) const { return join_[a * size() + b]; }

  /// Cover pairs (a, b): a < b with nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

  /// Builds from an already transitively closed, reflexive relation given as
  /// a row-major n*n matrix. Throws LatticeError for cycles or missing joins.
  static JoinTable from_closed_order(std::vector<std::string> ids, std::vector<std::uint8_t> order);

 private:
  std::vector<std::string> ids_;
  std::vector<std::uint8_t> order_;
  std::vector<std::uint32_t> join_;
};

struct LayerDecomposition {
  /// layers[k] = maximal elements of L minus layers[0..k-1], sorted by index.
  std::vector<std::vector<std::size_t>> layers;
  std::size_t depth() const { return layers.size(); }
};

/// Strict weak ordering on ids used inside a layer.
using Tiebreak = std::function<bool(const std::string&, const std::string&)>;

inline bool lexicographic(const std::string& a, const std::string& b) { return a < b; }

struct Enumeration {
  std::vector<std::size_t> order;     ///< order[beta] = element index of e_beta
  std::vector<std::size_t> position;  ///< inverse of order
  std::size_t beta0() const { return order.size(); }
};

SemilatticeSpec parse_lattice_spec(std::string_view text);
JoinTable validate_join_semilattice(const SemilatticeSpec& spec);
LayerDecomposition layer_decomposition(const JoinTable& table);
Enumeration enumerate_elements(const JoinTable& table, const LayerDecomposition& layers,
                               const Tiebreak& tiebreak = lexicographic);

/// Re-checks the enumeration contract: layer order respected, each e_beta
/// minimal in {e_0..e_beta}, and index(e_i v e_j) <= min(i, j). Returns a
/// description per violation; empty when all hold.
std::vector<std::string> check_enumeration(const JoinTable& table, const LayerDecomposition& layers,
                                           const Enumeration& enumeration);

/// The generating spec for a table (ids plus cover pairs).
SemilatticeSpec to_spec(const JoinTable& table);

}  // namespace semispread
