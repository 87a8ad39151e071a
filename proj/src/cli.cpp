#include "d21/cli.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "d21/scan.hpp"

namespace d21 {
namespace {

enum class Method { Graded, Full, Both };
enum class Format { Json, Csv };

struct RunConfig {
  std::uint32_t p = 5;
  std::string alpha = "1";
  std::string lambda;
  std::string chi_f = "0,0,0";
  Method method = Method::Graded;
  std::string output;
  std::optional<Format> format;
  std::size_t jobs = default_jobs();
  bool dump_brackets = false;
  int which = 0;
};

std::vector<std::int64_t> parse_ints(const std::string& text, std::size_t count, const char* what) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError(std::string("cannot parse ") + what + " '" + text + "'");
    }
  }
  if (out.size() != count) {
    throw ParameterError(std::string(what) + " needs " + std::to_string(count) + " comma-separated integers");
  }
  return out;
}

std::array<Residue, 3> parse_triple(const PrimeField& F, const std::string& text, const char* what) {
  const auto v = parse_ints(text, 3, what);
  return {F.reduce(v[0]), F.reduce(v[1]), F.reduce(v[2])};
}

PrimeField checked_field(const RunConfig& cfg) {
  const PrimeField F(cfg.p);
  if (cfg.p > 31) throw ParameterError("p must satisfy 3 < p <= 31");
  return F;
}

std::vector<Residue> parse_alphas(const PrimeField& F, const std::string& text) {
  if (text == "all") return valid_alphas(F.modulus());
  const Residue a = F.reduce(parse_ints(text, 1, "alpha")[0]);
  if (a == 0 || a == F.modulus() - 1) throw ParameterError("alpha must not be 0 or -1 mod p");
  return {a};
}

Residue single_alpha(const PrimeField& F, const std::string& text) {
  const auto alphas = parse_alphas(F, text);
  if (alphas.size() != 1) throw ParameterError("this command needs a single alpha");
  return alphas.front();
}

Character parse_chi(const PrimeField& F, const std::string& text) {
  return {parse_triple(F, text, "chi-f")};
}

HighestWeight parse_lambda(const PrimeField& F, const std::string& text) {
  if (text.empty() || text == "all") throw ParameterError("this command needs an explicit --lambda");
  return {parse_triple(F, text, "lambda")};
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParameterError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

nlohmann::json weight_json(const Weight& w) { return w.coords; }

nlohmann::json monomial_json(const PBWMonomial& m) {
  return {m.f_exp[0], m.f_exp[1], m.f_exp[2], m.theta.j(1), m.theta.j(2), m.theta.j(3), m.theta.j(4)};
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const PrimeField F = checked_field(cfg);
  const auto alphas = parse_alphas(F, cfg.alpha);
  const Character chi = parse_chi(F, cfg.chi_f);
  Sink sink(cfg.output, out);
  nlohmann::json report = nlohmann::json::array();
  bool ok = true;
  for (auto a : alphas) {
    const SuperAlgebra A = SuperAlgebra::build(cfg.p, a);
    if (cfg.dump_brackets) {
      report.push_back(A.bracket_json());
      continue;
    }
    const AxiomReport ar = check_axioms(A);
    for (const auto& v : ar.violations) err << "alpha=" << a << ": " << v << '\n';
    nlohmann::json entry = {{"p", cfg.p}, {"alpha", a}, {"algebra_violations", ar.violations.size()}};
    if (!cfg.lambda.empty()) {
      const HighestWeight lambda = parse_lambda(F, cfg.lambda);
      const VermaModule M = VermaModule::build(A, lambda, chi, ActionScope::Full);
      const ModuleAxiomReport mr = check_module_axioms(M);
      for (const auto& v : mr.violations) err << "alpha=" << a << ": " << v << '\n';
      entry["lambda"] = lambda.lambda;
      entry["chi_f"] = chi.chi_f;
      entry["module_violations"] = mr.violations.size();
      ok = ok && mr.ok();
    }
    ok = ok && ar.ok();
    report.push_back(entry);
  }
  sink.stream() << report.dump() << '\n';
  return ok ? kExitOk : kExitInconsistent;
}

int cmd_verma(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const PrimeField F = checked_field(cfg);
  const HighestWeight lambda = parse_lambda(F, cfg.lambda);
  std::map<Weight, std::vector<PBWMonomial>> spaces;
  for (std::size_t idx = 0; idx < module_dimension(cfg.p); ++idx) {
    const PBWMonomial m = PBWMonomial::from_index(idx, cfg.p);
    spaces[weight_of_monomial(F, m, lambda)].push_back(m);
  }
  nlohmann::json weights = nlohmann::json::array();
  for (const auto& [beta, monomials] : spaces) {
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& m : monomials) basis.push_back(monomial_json(m));
    weights.push_back({{"beta", weight_json(beta)}, {"dim", monomials.size()}, {"basis", basis}});
  }
  Sink sink(cfg.output, out);
  sink.stream() << nlohmann::json{{"lambda", lambda.lambda}, {"weights", weights}}.dump() << '\n';
  return kExitOk;
}

nlohmann::json full_json(const FullDerivationDims& d) {
  return {{"der", d.der}, {"ider", d.ider}, {"h1", d.der - d.ider}};
}

int cmd_h1(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const PrimeField F = checked_field(cfg);
  const Residue alpha = single_alpha(F, cfg.alpha);
  const HighestWeight lambda = parse_lambda(F, cfg.lambda);
  const Character chi = parse_chi(F, cfg.chi_f);
  if (cfg.method != Method::Graded && cfg.p > 7) throw ParameterError("full method needs p <= 7");
  const SuperAlgebra A = SuperAlgebra::build(cfg.p, alpha);
  const ActionScope scope = cfg.method == Method::Graded ? ActionScope::TargetWeights : ActionScope::Full;
  const VermaModule M = VermaModule::build(A, lambda, chi, scope);

  nlohmann::json j;
  std::size_t even = 0;
  std::size_t odd = 0;
  std::optional<H1Result> graded;
  if (cfg.method != Method::Full) {
    graded = h1(M);
    j = to_json(*graded);
    even = graded->dim_even;
    odd = graded->dim_odd;
  }
  if (cfg.method != Method::Graded) {
    const FullDerivationDims fe = full_derivation_dims(M, Parity::Even);
    const FullDerivationDims fo = full_derivation_dims(M, Parity::Odd);
    if (!graded) {
      j = {{"p", cfg.p}, {"alpha", alpha}, {"lambda", lambda.lambda}, {"chi_f", chi.chi_f},
           {"h1", {{"even", fe.der - fe.ider}, {"odd", fo.der - fo.ider}}}};
    }
    j["full"] = {{"even", full_json(fe)}, {"odd", full_json(fo)}};
    if (graded) {
      const bool dims_match = fe.der - fe.ider == even && fo.der - fo.ider == odd;
      const bool decomposition = fe.der == graded->der_even + fe.ider - graded->inner_even &&
                                 fo.der == graded->der_odd + fo.ider - graded->inner_odd;
      if (!dims_match || !decomposition) {
        err << "graded and full computations disagree: " << j["full"].dump() << " vs graded (" << even << ","
            << odd << ")\n";
        Sink sink(cfg.output, out);
        sink.stream() << j.dump() << '\n';
        return kExitInconsistent;
      }
    }
  }
  if (auto alias = offset_alias(cfg.p, lambda)) j["offset_alias"] = *alias;

  Sink sink(cfg.output, out);
  if (cfg.format == Format::Csv) {
    ScanRow row{{cfg.p, alpha, lambda, chi}, j["h1"]["even"].get<std::size_t>(), j["h1"]["odd"].get<std::size_t>()};
    sink.stream() << scan_csv({row});
  } else {
    sink.stream() << j.dump() << '\n';
  }
  return kExitOk;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const PrimeField F = checked_field(cfg);
  if (cfg.method != Method::Graded) throw ParameterError("scan supports only the graded method");
  const auto alphas = parse_alphas(F, cfg.alpha);
  const std::vector<HighestWeight> lambdas =
      cfg.lambda.empty() || cfg.lambda == "all" ? all_lambdas(cfg.p)
                                                : std::vector<HighestWeight>{parse_lambda(F, cfg.lambda)};
  const Character chi = parse_chi(F, cfg.chi_f);
  const auto rows = run_scan(scan_points(cfg.p, alphas, lambdas, {chi}), cfg.jobs);

  std::size_t nonzero = 0;
  for (const auto& r : rows) {
    if (r.h1_even == 0 && r.h1_odd == 0) continue;
    ++nonzero;
    const auto alias = offset_alias(cfg.p, r.point.lambda);
    err << "# nonzero alpha=" << r.point.alpha << " lambda=" << to_string(r.point.lambda.as_weight())
        << (alias ? " = " + *alias : std::string()) << " h1=(" << r.h1_even << "," << r.h1_odd << ")\n";
  }
  err << "# " << nonzero << " of " << rows.size() << " rows nonzero\n";

  Sink sink(cfg.output, out);
  if (cfg.format == Format::Json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"p", r.point.p},
                     {"alpha", r.point.alpha},
                     {"lambda", r.point.lambda.lambda},
                     {"chi_f", r.point.chi.chi_f},
                     {"h1", {{"even", r.h1_even}, {"odd", r.h1_odd}}}});
    }
    sink.stream() << arr.dump() << '\n';
  } else {
    sink.stream() << scan_csv(rows);
  }
  return kExitOk;
}

int cmd_verify_psi(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const PrimeField F = checked_field(cfg);
  const Residue alpha = single_alpha(F, cfg.alpha);
  const HighestWeight regime = psi_regime(cfg.which, F);
  const HighestWeight lambda = cfg.lambda.empty() ? regime : parse_lambda(F, cfg.lambda);
  const Character chi = parse_chi(F, cfg.chi_f);
  if (!(lambda == regime) || !chi.is_zero()) {
    throw ParameterError("psi_" + std::to_string(cfg.which) + " lives at lambda = " +
                         to_string(regime.as_weight()) + " with chi = 0");
  }
  const SuperAlgebra A = SuperAlgebra::build(cfg.p, alpha);
  const VermaModule M = VermaModule::build(A, lambda, chi, ActionScope::TargetWeights);
  const PsiVerification v = verify_psi(cfg.which, M);
  for (const auto& c : v.report["cases"]) err << "# completion path: " << c["path"].get<std::string>() << '\n';
  Sink sink(cfg.output, out);
  sink.stream() << v.report.dump() << '\n';
  if (!v.passed) {
    err << "psi_" << cfg.which << " failed verification\n";
    return kExitInconsistent;
  }
  return kExitOk;
}

void add_common(CLI::App* cmd, RunConfig& cfg, bool lambda_all) {
  cmd->add_option("--p", cfg.p, "prime modulus, 3 < p <= 31");
  cmd->add_option("--alpha", cfg.alpha, "alpha residue, or 'all'");
  cmd->add_option("--lambda", cfg.lambda, lambda_all ? "l1,l2,l3 or 'all'" : "l1,l2,l3");
  cmd->add_option("--chi-f", cfg.chi_f, "chi(f1),chi(f2),chi(f3)");
  cmd->add_option("--method", cfg.method, "graded, full or both")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Method>{{"graded", Method::Graded}, {"full", Method::Full}, {"both", Method::Both}}));
  cmd->add_option("--output", cfg.output, "write data here instead of stdout");
  cmd->add_option("--format", cfg.format, "json or csv")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"json", Format::Json}, {"csv", Format::Csv}}));
  cmd->add_option("--jobs", cfg.jobs, "worker threads (default: H1_JOBS or 1)")->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"D(2,1;alpha) baby Verma modules and their first cohomology over F_p"};
  app.require_subcommand(1);
  auto* check = app.add_subcommand("check", "algebra axioms; module axioms too when --lambda is given");
  add_common(check, cfg, false);
  check->add_flag("--dump-brackets", cfg.dump_brackets, "print the bracket table instead");
  auto* verma = app.add_subcommand("verma", "weight decomposition of Z_chi(lambda)");
  add_common(verma, cfg, false);
  auto* h1cmd = app.add_subcommand("h1", "H^1 at one point");
  add_common(h1cmd, cfg, false);
  auto* scan = app.add_subcommand("scan", "H^1 over a parameter grid, CSV");
  add_common(scan, cfg, true);
  auto* psi = app.add_subcommand("verify-psi", "check one of the explicit outer derivations");
  add_common(psi, cfg, false);
  psi->add_option("--which", cfg.which, "1..4")->required()->check(CLI::Range(1, 4));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kExitOk : kExitParameter;
  }

  try {
    if (check->parsed()) return cmd_check(cfg, out, err);
    if (verma->parsed()) return cmd_verma(cfg, out, err);
    if (h1cmd->parsed()) return cmd_h1(cfg, out, err);
    if (scan->parsed()) return cmd_scan(cfg, out, err);
    if (psi->parsed()) return cmd_verify_psi(cfg, out, err);
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const FieldError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kExitParameter;
  } catch (const ConsistencyError& e) {
    err << "inconsistency: " << e.what() << '\n';
    return kExitInconsistent;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInconsistent;
  }
  return kExitParameter;
}

}  // namespace d21
