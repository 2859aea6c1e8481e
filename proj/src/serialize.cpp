#include "semispread/serialize.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace semispread {

using json = nlohmann::ordered_json;

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json header(std::string_view kind, const RunConfig& config) {
  json flags = json::object();
  for (const auto& [k, v] : config.flags) flags[k] = v;
  json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = kind;
  j["config"] = {{"command", config.command}, {"flags", flags}, {"seed", config.seed}};
  return j;
}

json parse(std::string_view text, std::string_view kind) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("format_version") || j["format_version"] != kFormatVersion) {
    throw FormatError("missing or unsupported format_version");
  }
  if (!j.contains("kind") || j["kind"] != kind) throw FormatError("expected a " + std::string(kind) + " document");
  return j;
}

Rational q(const json& j) {
  if (!j.is_string()) throw FormatError("rational fields must be \"num/den\" strings");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json search_json(const SearchOptions& s) {
  return {{"depth_budget", s.depth_budget},
          {"search_budget", s.search_budget},
          {"step_limit", s.step_limit},
          {"clamp_square", s.clamp_square}};
}

SearchOptions search_from(const json& j) {
  SearchOptions s;
  s.depth_budget = j.at("depth_budget").get<int>();
  s.search_budget = j.at("search_budget").get<int>();
  s.step_limit = j.at("step_limit").get<int>();
  s.clamp_square = j.at("clamp_square").get<bool>();
  return s;
}

json family_body(const GLFFamily& f) {
  json j;
  j["functions"] = f.functions;
  j["pairs"] = {{"min_q", f.pairs.min_q}};
  j["search"] = search_json(f.search);
  j["certified_subsets"] = f.certified_subsets;
  json K = json::array();
  for (const auto& k : f.K) K.push_back(to_string(k));
  j["K"] = K;
  json rounds = json::array();
  for (const auto& r : f.rounds) {
    json high = json::array();
    for (const auto& s : r.high) high.push_back({{"end", to_string(s.end)}, {"value", to_string(s.value)}});
    rounds.push_back({{"p", r.p},
                      {"q", r.q},
                      {"K_prev", to_string(r.K_prev)},
                      {"eps", to_string(r.eps)},
                      {"N_start", to_string(r.N_start)},
                      {"N_end", to_string(r.N_end)},
                      {"high", high},
                      {"low", to_string(r.low)}});
  }
  j["rounds"] = rounds;
  return j;
}

GLFFamily family_from(const json& j) {
  GLFFamily f;
  f.functions = j.at("functions").get<int>();
  f.pairs.min_q = j.at("pairs").at("min_q").get<int>();
  f.search = search_from(j.at("search"));
  f.certified_subsets = j.at("certified_subsets").get<std::vector<std::vector<int>>>();
  for (const auto& k : j.at("K")) f.K.push_back(q(k));
  for (const auto& rj : j.at("rounds")) {
    RoundRecord r;
    r.p = rj.at("p").get<int>();
    r.q = rj.at("q").get<int>();
    r.K_prev = q(rj.at("K_prev"));
    r.eps = q(rj.at("eps"));
    r.N_start = q(rj.at("N_start"));
    r.N_end = q(rj.at("N_end"));
    for (const auto& s : rj.at("high")) r.high.push_back({q(s.at("end")), q(s.at("value"))});
    r.low = q(rj.at("low"));
    if (r.p < 1 || r.p > f.functions || r.high.empty()) throw FormatError("malformed round record");
    f.rounds.push_back(std::move(r));
  }
  if (f.K.size() != f.rounds.size() + 1) throw FormatError("K must have one entry per round plus K_0");
  // Rebuilding every function validates the stored values.
  try {
    for (int p = 1; p <= f.functions; ++p) (void)f.weight(p);
  } catch (const GlfError& e) {
    throw FormatError(std::string("family does not describe valid weights: ") + e.what());
  }
  return f;
}

json ratio_body(const RatioReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"round", row.round},
                    {"q", row.q},
                    {"K_prev", to_string(row.K_prev)},
                    {"N", to_string(row.N)},
                    {"S_p", to_string(row.S_p)},
                    {"S_M", to_string(row.S_M)},
                    {"ratio", to_string(row.ratio)},
                    {"bound", to_string(row.bound)},
                    {"lower_ok", row.lower_ok},
                    {"upper_ok", row.upper_ok}});
  }
  return {{"M", r.M},
          {"p_prime", r.p_prime},
          {"rows", rows},
          {"max_ratio", to_string(r.max_ratio)},
          {"bounds_ok", r.bounds_ok},
          {"strictly_increasing", r.strictly_increasing}};
}

json sets_by_id(const JoinTable& table, const RepMap& rep) {
  json sets = json::object();
  for (std::size_t e = 0; e < table.size(); ++e) sets[table.id(e)] = rep.sets[e];
  return sets;
}

json lattice_body(const JoinTable& table) {
  const SemilatticeSpec spec = to_spec(table);
  json le = json::array();
  for (const auto& [a, b] : spec.le) le.push_back({a, b});
  return {{"elements", spec.elements}, {"le", le}};
}

}  // namespace

std::string lattice_json(const JoinTable& table, const LayerDecomposition& layers, const Enumeration& enumeration,
                         const RunConfig& config) {
  json j = header("lattice_check", config);
  j["elements"] = table.ids();
  json lj = json::array();
  for (const auto& layer : layers.layers) {
    json ids = json::array();
    for (auto e : layer) ids.push_back(table.id(e));
    lj.push_back(ids);
  }
  j["layers"] = lj;
  json order = json::array();
  for (auto e : enumeration.order) order.push_back(table.id(e));
  j["enumeration"] = order;
  json covers = json::array();
  for (const auto& [a, b] : table.covers()) covers.push_back({table.id(a), table.id(b)});
  j["covers"] = covers;
  return dump(j);
}

std::string rep_json(const JoinTable& table, const Enumeration& enumeration, const RepMap& rep,
                     const RunConfig& config) {
  json j = header("representation", config);
  json order = json::array();
  for (auto e : enumeration.order) order.push_back(table.id(e));
  j["enumeration"] = order;
  j["universe_bound"] = rep.universe_bound;
  j["sets"] = sets_by_id(table, rep);
  return dump(j);
}

std::string family_json(const GLFFamily& family, const RunConfig& config) {
  json j = header("glf_family", config);
  j.update(family_body(family));
  return dump(j);
}

GLFFamily family_from_json(std::string_view text) {
  const json j = parse(text, "glf_family");
  try {
    return family_from(j);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed family document: ") + e.what());
  }
}

std::string certification_json(const std::vector<LabeledCertification>& results, const RunConfig& config) {
  json j = header("certification", config);
  json arr = json::array();
  bool all = true;
  for (const auto& r : results) {
    json e = {{"label", r.label},
              {"subset", r.subset},
              {"verdict", to_string(r.result.verdict)},
              {"boxes_examined", r.result.boxes_examined},
              {"max_depth", r.result.max_depth},
              {"depth_budget", r.result.depth_budget}};
    if (r.result.verdict == Verdict::Violated) {
      e["witness"] = {{"x", to_string(r.result.witness_x)}, {"y", to_string(r.result.witness_y)}};
    } else if (r.result.verdict == Verdict::Undetermined) {
      const Box& b = r.result.open_box;
      e["open_box"] = {{"x_lo", to_string(b.x_lo)},
                       {"x_hi", to_string(b.x_hi)},
                       {"y_lo", to_string(b.y_lo)},
                       {"y_hi", to_string(b.y_hi)}};
    }
    all = all && r.result.verdict == Verdict::Certified;
    arr.push_back(std::move(e));
  }
  j["all_certified"] = all;
  j["results"] = arr;
  return dump(j);
}

std::string ratio_json(const RatioReport& report, const RunConfig& config) {
  json j = header("ratio_report", config);
  j.update(ratio_body(report));
  return dump(j);
}

std::string ratio_csv(const RatioReport& report) {
  std::ostringstream out;
  out << "round,q,K_prev,N,S_p,S_M,ratio,bound,lower_ok,upper_ok\n";
  for (const auto& r : report.rows) {
    out << r.round << ',' << r.q << ',' << to_decimal(r.K_prev) << ',' << to_decimal(r.N) << ',' << to_decimal(r.S_p)
        << ',' << to_decimal(r.S_M) << ',' << to_decimal(r.ratio) << ',' << to_decimal(r.bound) << ','
        << (r.lower_ok ? 1 : 0) << ',' << (r.upper_ok ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string lorentz_csv(const LorentzSeq& seq) {
  std::ostringstream out;
  out << "n,w,S\n";
  for (std::size_t n = 1; n <= seq.size(); ++n) out << n << ',' << to_decimal(seq.w(n)) << ',' << to_decimal(seq.S(n)) << '\n';
  return out.str();
}

std::string submult_json(const SubmultResult& result, const Rational& C, std::size_t bound, const RunConfig& config) {
  json j = header("submultiplicativity", config);
  j["C"] = to_string(C);
  j["bound"] = bound;
  j["pairs_checked"] = result.pairs_checked;
  j["pass"] = result.pass;
  if (!result.pass) {
    j["witness"] = {{"m", result.m}, {"n", result.n}, {"lhs", to_string(result.lhs)}, {"rhs", to_string(result.rhs)}};
  }
  return dump(j);
}

std::string join_equivalence_json(const JoinEquivalenceReport& report, const RunConfig& config) {
  json j = header("join_equivalence", config);
  j["trials"] = report.trials;
  j["exact"] = report.exact;
  j["tolerance"] = report.tolerance;
  if (report.exact) {
    j["min_ratio"] = to_string(report.min_ratio);
    j["max_ratio"] = to_string(report.max_ratio);
  } else {
    j["min_ratio"] = report.min_ratio_fp;
    j["max_ratio"] = report.max_ratio_fp;
  }
  j["within_bounds"] = report.within_bounds;
  if (!report.witness.empty()) {
    json w = json::array();
    for (const auto& x : report.witness) w.push_back(to_string(x));
    j["witness"] = w;
  }
  return dump(j);
}

std::string model_json(const ModelReport& model, const RunConfig& config) {
  json j = header("model", config);
  j["lattice"] = lattice_body(model.lattice);
  json order = json::array();
  for (auto e : model.enumeration.order) order.push_back(model.lattice.id(e));
  j["enumeration"] = order;
  j["rep"] = {{"universe_bound", model.rep.universe_bound}, {"sets", sets_by_id(model.lattice, model.rep)}};
  j["V"] = model.V;
  j["options"] = {{"rounds", model.options.rounds},
                  {"eps_decay", to_string(model.options.eps_decay)},
                  {"min_q", model.options.min_q},
                  {"search", search_json(model.options.search)}};
  json subsets = json::object();
  for (std::size_t e = 0; e < model.lattice.size(); ++e) subsets[model.lattice.id(e)] = model.subsets[e];
  j["subsets"] = subsets;
  j["family"] = family_body(model.family);
  return dump(j);
}

ModelReport model_from_json(std::string_view text) {
  const json j = parse(text, "model");
  ModelReport model;
  try {
    SemilatticeSpec spec;
    spec.elements = j.at("lattice").at("elements").get<std::vector<std::string>>();
    for (const auto& p : j.at("lattice").at("le")) {
      spec.le.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
    }
    model.lattice = validate_join_semilattice(spec);
    const std::size_t n = model.lattice.size();

    const auto order = j.at("enumeration").get<std::vector<std::string>>();
    if (order.size() != n) throw FormatError("enumeration must list every element once");
    model.enumeration.order.resize(n);
    model.enumeration.position.assign(n, n);
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t e = model.lattice.index_of(order[b]);
      if (e >= n || model.enumeration.position[e] != n) throw FormatError("enumeration must list every element once");
      model.enumeration.order[b] = e;
      model.enumeration.position[e] = b;
    }

    model.rep.universe_bound = j.at("rep").at("universe_bound").get<std::size_t>();
    model.rep.sets.resize(n);
    for (std::size_t e = 0; e < n; ++e) {
      model.rep.sets[e] = j.at("rep").at("sets").at(model.lattice.id(e)).get<IndexSet>();
    }

    const json& o = j.at("options");
    model.options.rounds = o.at("rounds").get<int>();
    model.options.eps_decay = q(o.at("eps_decay"));
    model.options.min_q = o.at("min_q").get<int>();
    model.options.search = search_from(o.at("search"));
    model.family = family_from(j.at("family"));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed model document: ") + e.what());
  } catch (const LatticeError& e) {
    throw FormatError(std::string("model lattice is invalid: ") + e.what());
  }
  complete_model(model);
  if (static_cast<int>(model.V.size()) != model.family.functions) {
    throw FormatError("family size does not match the represented universe");
  }
  return model;
}

std::string order_iso_json(const ModelReport& model, const OrderIsoReport& report, const RunConfig& config) {
  const JoinTable& L = model.lattice;
  json j = header("order_iso_report", config);
  j["threshold"] = to_string(report.threshold);
  j["seed"] = report.seed;
  j["norm_trials"] = report.norm_trials;
  j["rounds"] = model.family.rounds.size();
  j["passed"] = report.passed;
  j["weights_certified"] = report.weights_certified;
  j["weights_distinct"] = report.weights_distinct;
  j["ratios_increasing"] = report.ratios_increasing;
  json cert = json::object();
  for (std::size_t e = 0; e < L.size(); ++e) cert[L.id(e)] = to_string(report.certification[e]);
  j["certification"] = cert;
  json pairs = json::array();
  for (const auto& pr : report.pairs) {
    json p = {{"e1", L.id(pr.e1)},
              {"e2", L.id(pr.e2)},
              {"leq", pr.leq},
              {"verdict", to_string(pr.verdict)},
              {"matches", pr.matches}};
    if (pr.domination) {
      p["domination"] = {{"pointwise", pr.domination->pointwise},
                         {"norm_trials", pr.domination->norm_trials},
                         {"norms_ok", pr.domination->norms_ok}};
    }
    if (pr.incomparability) {
      json w = {{"v", pr.incomparability->v}, {"p", pr.incomparability->p}};
      w.update(ratio_body(pr.incomparability->ratios));
      w["threshold_met"] = pr.incomparability->threshold_met;
      p["incomparability"] = w;
    }
    if (!pr.note.empty()) p["note"] = pr.note;
    pairs.push_back(std::move(p));
  }
  j["pairs"] = pairs;
  return dump(j);
}

std::string order_iso_csv(const ModelReport& model, const OrderIsoReport& report) {
  const JoinTable& L = model.lattice;
  const std::size_t n = L.size();
  std::ostringstream out;
  out << "e1\\e2";
  for (std::size_t e = 0; e < n; ++e) out << ',' << L.id(e);
  out << '\n';
  for (std::size_t a = 0; a < n; ++a) {
    out << L.id(a);
    for (std::size_t b = 0; b < n; ++b) {
      const PairResult& pr = report.pairs[a * n + b];
      out << ',' << to_string(pr.verdict);
      if (pr.incomparability) out << ':' << to_decimal(pr.incomparability->ratios.max_ratio, 6);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace semispread
