#include "semispread/cli.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "semispread/lorentz.hpp"
#include "semispread/serialize.hpp"

namespace semispread {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write '" + path + "'");
  f << text;
}

Rational rational_arg(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw InputError(flag + ": '" + text + "' is not a rational");
  }
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

JoinTable load_lattice(const std::string& path) {
  return validate_join_semilattice(parse_lattice_spec(read_file(path)));
}

struct Globals {
  unsigned jobs = 1;
  std::uint64_t seed = 0;
};

struct Budgets {
  int depth = kDefaultDepthBudget;
  int search = 64;
  int steps = 200;

  void add(CLI::App* app) {
    app->add_option("--depth", depth, "Box subdivision depth budget")->check(CLI::PositiveNumber);
    app->add_option("--search-budget", search, "Value halvings per extension")->check(CLI::PositiveNumber);
    app->add_option("--step-limit", steps, "High steps per round")->check(CLI::PositiveNumber);
  }
  SearchOptions options(unsigned jobs) const {
    SearchOptions o;
    o.depth_budget = depth;
    o.search_budget = search;
    o.step_limit = steps;
    o.jobs = jobs;
    return o;
  }
  void record(RunConfig& c) const {
    c.flags.emplace_back("depth", std::to_string(depth));
    c.flags.emplace_back("search_budget", std::to_string(search));
    c.flags.emplace_back("step_limit", std::to_string(steps));
  }
};

RunConfig config_for(std::string command, const Globals& g) {
  RunConfig c;
  c.command = std::move(command);
  c.seed = g.seed;
  c.flags.emplace_back("jobs", std::to_string(g.jobs));
  return c;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite join-semilattices, good Lorentz function families and order checks", "semispread"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--jobs", g.jobs, "Worker threads for certification")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for random norm trials");

  std::function<int()> action;

  // lattice
  auto* lattice = app.add_subcommand("lattice", "Validate and represent a semilattice");
  lattice->require_subcommand(1);

  std::string lattice_file, out_file, tiebreak = "lex";
  auto* check = lattice->add_subcommand("check", "Validate a lattice document");
  check->add_option("file", lattice_file, "Lattice JSON")->required();
  check->add_option("--out", out_file, "Write the summary here instead of stdout");
  check->callback([&] {
    action = [&] {
      const JoinTable table = load_lattice(lattice_file);
      const auto layers = layer_decomposition(table);
      const auto en = enumerate_elements(table, layers);
      RunConfig c = config_for("lattice check", g);
      c.flags.emplace_back("file", lattice_file);
      emit(lattice_json(table, layers, en, c), out_file, out);
      return int(kExitOk);
    };
  });

  auto* represent = lattice->add_subcommand("represent", "Compute the set representation T");
  represent->add_option("file", lattice_file, "Lattice JSON")->required();
  represent->add_option("--tiebreak", tiebreak, "Order inside a layer")->check(CLI::IsMember({"lex"}));
  represent->add_option("--out", out_file, "Write the RepMap here instead of stdout");
  represent->callback([&] {
    action = [&] {
      const JoinTable table = load_lattice(lattice_file);
      const auto en = enumerate_elements(table, layer_decomposition(table), lexicographic);
      const auto [rep, trace] = build_representation(en, table);
      RunConfig c = config_for("lattice represent", g);
      c.flags.emplace_back("file", lattice_file);
      c.flags.emplace_back("tiebreak", tiebreak);
      emit(rep_json(table, en, rep, c), out_file, out);
      const RepReport rr = verify_representation(rep, table);
      const IdentityReport ir = check_interval_identity(trace);
      for (const auto& f : rr.failures) {
        err << "representation check '" << f.check << "' fails at (" << table.id(f.a) << "," << table.id(f.b) << ")\n";
      }
      for (const auto& v : ir.violations) {
        err << "interval identity fails at beta1=" << v.beta1 << " beta2=" << v.beta2 << "\n";
      }
      return rr.ok() && ir.ok() ? int(kExitOk) : int(kExitFailed);
    };
  });

  // glf
  auto* glf = app.add_subcommand("glf", "Build and inspect weight families");
  glf->require_subcommand(1);

  int functions = 0, rounds = 0, min_q = 2, against = 0;
  std::string eps_decay = "1/2", family_file, csv_file;
  std::vector<int> subset;
  Budgets budgets;

  auto* build = glf->add_subcommand("build", "Construct a family round by round");
  build->add_option("--functions", functions, "Number of functions P")->required()->check(CLI::Range(2, 16));
  build->add_option("--rounds", rounds, "Number of rounds I")->required()->check(CLI::PositiveNumber);
  build->add_option("--eps-decay", eps_decay, "eps_i = r^i");
  build->add_option("--min-q", min_q, "Smallest q in the pair enumeration")->check(CLI::Range(2, 1 << 20));
  build->add_option("--out", out_file, "Family JSON")->required();
  budgets.add(build);
  build->callback([&] {
    action = [&] {
      const Rational r = rational_arg("--eps-decay", eps_decay);
      if (!(r > 0 && r < 1)) throw InputError("--eps-decay must lie in (0, 1)");
      FamilyOptions o;
      o.functions = functions;
      o.rounds = rounds;
      o.eps = geometric_schedule(r, rounds);
      o.pairs.min_q = min_q;
      o.search = budgets.options(g.jobs);
      RunConfig c = config_for("glf build", g);
      c.flags.emplace_back("functions", std::to_string(functions));
      c.flags.emplace_back("rounds", std::to_string(rounds));
      c.flags.emplace_back("eps_decay", to_string(r));
      c.flags.emplace_back("min_q", std::to_string(min_q));
      budgets.record(c);
      const GLFFamily family = build_family(o);
      emit(family_json(family, c), out_file, out);
      return int(kExitOk);
    };
  });

  auto* certify = glf->add_subcommand("certify", "Certify every function and certified subset sup");
  certify->add_option("file", family_file, "Family JSON")->required();
  certify->add_option("--depth", budgets.depth, "Box subdivision depth budget")->check(CLI::PositiveNumber);
  certify->add_option("--out", out_file, "Write the report here instead of stdout");
  certify->callback([&] {
    action = [&] {
      const GLFFamily family = family_from_json(read_file(family_file));
      std::vector<std::vector<int>> subsets;
      for (int p = 1; p <= family.functions; ++p) subsets.push_back({p});
      for (const auto& M : family.certified_subsets) {
        if (std::find(subsets.begin(), subsets.end(), M) == subsets.end()) subsets.push_back(M);
      }
      std::vector<LabeledCertification> results;
      bool ok = true;
      for (const auto& M : subsets) {
        LabeledCertification lc;
        lc.label = M.size() == 1 ? "w" + std::to_string(M[0]) : "sup{" + join_ints(M) + "}";
        lc.subset = M;
        lc.result = certify_glf(sup_weights(family, M), budgets.depth);
        ok = ok && lc.result.verdict == Verdict::Certified;
        results.push_back(std::move(lc));
      }
      RunConfig c = config_for("glf certify", g);
      c.flags.emplace_back("file", family_file);
      c.flags.emplace_back("depth", std::to_string(budgets.depth));
      emit(certification_json(results, c), out_file, out);
      return ok ? int(kExitOk) : int(kExitFailed);
    };
  });

  auto* ratios = glf->add_subcommand("ratios", "Ratios S_p'(N_i) / S_M(N_i) over rounds selecting p'");
  ratios->add_option("file", family_file, "Family JSON")->required();
  ratios->add_option("--subset", subset, "M, comma separated")->required()->delimiter(',');
  ratios->add_option("--against", against, "p' outside M")->required();
  ratios->add_option("--csv", csv_file, "Also write the rows as CSV");
  ratios->add_option("--out", out_file, "Write the report here instead of stdout");
  ratios->callback([&] {
    action = [&] {
      const GLFFamily family = family_from_json(read_file(family_file));
      RatioReport report;
      try {
        report = ratio_report(family, subset, against);
      } catch (const GlfError& e) {
        throw InputError(e.what());
      }
      RunConfig c = config_for("glf ratios", g);
      c.flags.emplace_back("file", family_file);
      c.flags.emplace_back("subset", join_ints(subset));
      c.flags.emplace_back("against", std::to_string(against));
      emit(ratio_json(report, c), out_file, out);
      if (!csv_file.empty()) emit(ratio_csv(report), csv_file, out);
      return report.bounds_ok && report.strictly_increasing ? int(kExitOk) : int(kExitFailed);
    };
  });

  // model
  auto* model = app.add_subcommand("model", "Weights for a lattice and the order check");
  model->require_subcommand(1);
  std::string model_file, threshold = "5";

  auto* mbuild = model->add_subcommand("build", "Build the family over V = union of T(e)");
  mbuild->add_option("file", lattice_file, "Lattice JSON")->required();
  mbuild->add_option("--rounds", rounds, "Number of rounds I")->required()->check(CLI::PositiveNumber);
  mbuild->add_option("--eps-decay", eps_decay, "eps_i = r^i");
  mbuild->add_option("--out", out_file, "Model JSON")->required();
  budgets.add(mbuild);
  mbuild->callback([&] {
    action = [&] {
      const JoinTable table = load_lattice(lattice_file);
      ModelOptions o;
      o.rounds = rounds;
      o.eps_decay = rational_arg("--eps-decay", eps_decay);
      if (!(o.eps_decay > 0 && o.eps_decay < 1)) throw InputError("--eps-decay must lie in (0, 1)");
      o.search = budgets.options(g.jobs);
      RunConfig c = config_for("model build", g);
      c.flags.emplace_back("file", lattice_file);
      c.flags.emplace_back("rounds", std::to_string(rounds));
      c.flags.emplace_back("eps_decay", to_string(o.eps_decay));
      budgets.record(c);
      const ModelReport m = build_model(table, o);
      emit(model_json(m, c), out_file, out);
      return int(kExitOk);
    };
  });

  auto* verify = model->add_subcommand("verify", "Check the weight order against the lattice order");
  verify->add_option("file", model_file, "Model JSON")->required();
  verify->add_option("--threshold", threshold, "Required max ratio for incomparable pairs");
  verify->add_option("--csv", csv_file, "Also write the verdict matrix as CSV");
  verify->add_option("--out", out_file, "Write the report here instead of stdout");
  verify->callback([&] {
    action = [&] {
      const Rational t = rational_arg("--threshold", threshold);
      if (t < 1) throw InputError("--threshold must be at least 1");
      ModelReport m = model_from_json(read_file(model_file));
      m.family.search.jobs = g.jobs;
      const OrderIsoReport report = verify_order_iso(m, t, g.seed);
      RunConfig c = config_for("model verify", g);
      c.flags.emplace_back("file", model_file);
      c.flags.emplace_back("threshold", to_string(t));
      emit(order_iso_json(m, report, c), out_file, out);
      if (!csv_file.empty()) emit(order_iso_csv(m, report), csv_file, out);
      for (const auto& pr : report.pairs) {
        if (!pr.note.empty()) err << pr.note << "\n";
      }
      return report.passed ? int(kExitOk) : int(kExitFailed);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitInput;
  }
  if (!action) {
    err << "usage error: no command given\n";
    return kExitInput;
  }

  try {
    return action();
  } catch (const LatticeError& e) {
    err << to_string(e.kind());
    if (!e.first().empty()) err << "(" << e.first() << (e.second().empty() ? "" : "," + e.second()) << ")";
    err << ": " << e.what() << "\n";
    return e.kind() == LatticeError::Kind::InternalInvariantFailure ? kExitFailed : kExitInput;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const FormatError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SpdwError& e) {
    err << e.what() << "\n";
    return e.kind() == SpdwError::Kind::InsufficientRounds || e.kind() == SpdwError::Kind::InvalidArgument
               ? kExitInput
               : kExitFailed;
  } catch (const GlfError& e) {
    err << to_string(e.kind()) << ": " << e.what() << "\n";
    return e.kind() == GlfError::Kind::InvalidArgument ? kExitInput : kExitFailed;
  } catch (const LorentzError& e) {
    err << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace semispread
