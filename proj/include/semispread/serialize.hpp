#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semispread/family.hpp"
#include "semispread/glf.hpp"
#include "semispread/lorentz.hpp"
#include "semispread/representation.hpp"
#include "semispread/semilattice.hpp"
#include "semispread/spdw.hpp"

namespace semispread {

constexpr int kFormatVersion = 1;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The invocation that produced an artifact; embedded in every report.
struct RunConfig {
  std::string command;
  std::vector<std::pair<std::string, std::string>> flags;  ///< in declaration order
  std::uint64_t seed = 0;
};

struct LabeledCertification {
  std::string label;
  std::vector<int> subset;
  CertificationResult result;
};

// All writers return pretty-printed JSON (or CSV) ending in a newline and
// depend only on their arguments.

std::string lattice_json(const JoinTable& table, const LayerDecomposition& layers, const Enumeration& enumeration,
                         const RunConfig& config);
std::string rep_json(const JoinTable& table, const Enumeration& enumeration, const RepMap& rep,
                     const RunConfig& config);

std::string family_json(const GLFFamily& family, const RunConfig& config);
GLFFamily family_from_json(std::string_view text);

std::string certification_json(const std::vector<LabeledCertification>& results, const RunConfig& config);

std::string ratio_json(const RatioReport& report, const RunConfig& config);
std::string ratio_csv(const RatioReport& report);

/// Rows (n, w(n), S(n)) for n = 1..N_max.
std::string lorentz_csv(const LorentzSeq& seq);
std::string submult_json(const SubmultResult& result, const Rational& C, std::size_t bound, const RunConfig& config);
std::string join_equivalence_json(const JoinEquivalenceReport& report, const RunConfig& config);

std::string model_json(const ModelReport& model, const RunConfig& config);
ModelReport model_from_json(std::string_view text);

std::string order_iso_json(const ModelReport& model, const OrderIsoReport& report, const RunConfig& config);
/// Verdict matrix: rows e1, columns e2, in lattice document order.
std::string order_iso_csv(const ModelReport& model, const OrderIsoReport& report);

}  // namespace semispread
