// Command-line front end for the four-level laser heat engine toolkit:
// steady states, power sweeps, optimization schemes, universality reports,
// and the reference datasets behind the power/EMP figures.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qhe/closed_forms.hpp"
#include "qhe/engine_params.hpp"
#include "qhe/liouvillian.hpp"
#include "qhe/observables.hpp"
#include "qhe/optimize.hpp"
#include "qhe/universality.hpp"

using json = nlohmann::ordered_json;
using namespace qhe;

namespace {

constexpr int kExitNumeric = 2;

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct ParamFlags {
  std::map<std::string, double> values;
  std::map<std::string, bool> given;

  static const std::vector<std::string>& names() {
    static const std::vector<std::string> n = {"omega-c", "omega-h", "gamma-c", "gamma-h",
                                               "lambda",  "p",       "t-hot",   "t-cold"};
    return n;
  }
};

void add_param_flags(CLI::App* cmd, ParamFlags& pf, const EngineParams& defaults) {
  pf.values = {{"omega-c", defaults.omega_c}, {"omega-h", defaults.omega_h},
               {"gamma-c", defaults.gamma_c}, {"gamma-h", defaults.gamma_h},
               {"lambda", defaults.lambda},   {"p", defaults.p},
               {"t-hot", defaults.t_h},       {"t-cold", defaults.t_c}};
  for (const auto& name : ParamFlags::names()) {
    cmd->add_option_function<double>(
        "--" + name,
        [&pf, name](double v) {
          pf.values[name] = v;
          pf.given[name] = true;
        },
        "engine parameter " + name);
  }
}

// Flat "key = value" file, '#' comments; keys are the flag names without the
// leading dashes.  Precedence: command-line flag > config value > default.
void apply_config(const std::string& path, ParamFlags& pf) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open config file " + path);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError(
          "--config", "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!pf.values.count(key))
      throw CLI::ValidationError("--config", "unknown key '" + key + "'");
    if (!pf.given[key]) {
      try {
        pf.values[key] = std::stod(val);
      } catch (const std::exception&) {
        throw CLI::ValidationError("--config", "bad number for key '" + key + "'");
      }
    }
  }
}

EngineParams to_params(const ParamFlags& pf) {
  EngineParams p;
  p.omega_c = pf.values.at("omega-c");
  p.omega_h = pf.values.at("omega-h");
  p.gamma_c = pf.values.at("gamma-c");
  p.gamma_h = pf.values.at("gamma-h");
  p.lambda = pf.values.at("lambda");
  p.p = pf.values.at("p");
  p.t_h = pf.values.at("t-hot");
  p.t_c = pf.values.at("t-cold");
  return p;
}

json params_json(const EngineParams& p) {
  return json{{"omega_c", p.omega_c}, {"omega_h", p.omega_h}, {"gamma_c", p.gamma_c},
              {"gamma_h", p.gamma_h}, {"lambda", p.lambda},   {"p", p.p},
              {"t_c", p.t_c},         {"t_h", p.t_h}};
}

void write_output(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << body;
}

void require_valid(const EngineParams& p, ValidationMode mode) {
  const auto report = validate(p, mode);
  if (!report.ok()) {
    std::string msg = "invalid parameters:";
    for (const auto& v : report.violations) msg += " [" + v + "]";
    throw CLI::ValidationError("parameters", msg);
  }
}

json rho_json(const DensityMatrix& s) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < 4; ++i) {
    json rrow = json::array(), irow = json::array();
    for (int j = 0; j < 4; ++j) {
      rrow.push_back(s(i, j).real());
      irow.push_back(s(i, j).imag());
    }
    re.push_back(rrow);
    im.push_back(irow);
  }
  return json{{"re", re}, {"im", im}};
}

struct SweepSpec {
  std::string var;
  double lo = 0.0, hi = 0.0;
  int count = 0;
};

SweepSpec parse_sweep(const std::string& text) {
  SweepSpec s;
  std::stringstream ss(text);
  std::string tok;
  std::vector<std::string> parts;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.size() != 4)
    throw CLI::ValidationError("--sweep", "expected VAR:LO:HI:N, got '" + text + "'");
  s.var = parts[0];
  for (auto& c : s.var)
    if (c == '_') c = '-';
  const auto& known = ParamFlags::names();
  if (std::find(known.begin(), known.end(), s.var) == known.end())
    throw CLI::ValidationError("--sweep", "unknown sweep variable '" + s.var + "'");
  try {
    s.lo = std::stod(parts[1]);
    s.hi = std::stod(parts[2]);
    s.count = std::stoi(parts[3]);
  } catch (const std::exception&) {
    throw CLI::ValidationError("--sweep", "bad numbers in '" + text + "'");
  }
  if (s.count < 1) throw CLI::ValidationError("--sweep", "N must be >= 1");
  if (s.count > 1 && !(s.lo < s.hi)) throw CLI::ValidationError("--sweep", "requires LO < HI");
  return s;
}

EngineParams with_value(EngineParams p, const std::string& var, double v) {
  if (var == "omega-c") p.omega_c = v;
  else if (var == "omega-h") p.omega_h = v;
  else if (var == "gamma-c") p.gamma_c = v;
  else if (var == "gamma-h") p.gamma_h = v;
  else if (var == "lambda") p.lambda = v;
  else if (var == "p") p.p = v;
  else if (var == "t-hot") p.t_h = v;
  else if (var == "t-cold") p.t_c = v;
  return p;
}

// ---------------------------------------------------------------- commands

int run_steady(const EngineParams& params, const std::string& output) {
  require_valid(params, ValidationMode::unrestricted);
  const auto reduced = solve_steady_reduced(params);
  const auto full = solve_steady_full(params);
  const auto obs = observables_from_state(params, full.state);
  json out;
  out["meta"] = params_json(params);
  out["reduced"] = {{"rho", rho_json(reduced.state)},
                    {"residual", reduced.residual},
                    {"condition", reduced.condition}};
  out["full"] = {{"rho", rho_json(full.state)},
                 {"residual", full.residual},
                 {"condition", full.condition}};
  out["observables"] = {{"power", obs.power},
                        {"hot_heat_flux", obs.hot_heat_flux},
                        {"efficiency", obs.efficiency},
                        {"coherence_current", obs.coherence_current},
                        {"power_closed_form", power_closed_form(params)},
                        {"solver_agreement", reduced.state.max_abs_diff(full.state)}};
  write_output(output, out.dump(2) + "\n");
  return 0;
}

int run_power_sweep(const EngineParams& params, const SweepSpec& sweep,
                    const std::string& output, const std::string& format) {
  struct Row {
    double value = 0.0, closed = 0.0, numeric = 0.0, rel = 0.0;
    std::string status = "ok";
  };
  std::vector<Row> rows;
  for (int i = 0; i < sweep.count; ++i) {
    Row r;
    r.value = sweep.count == 1
                  ? sweep.lo
                  : sweep.lo + (sweep.hi - sweep.lo) * i / double(sweep.count - 1);
    const EngineParams q = with_value(params, sweep.var, r.value);
    const auto report = validate(q, ValidationMode::engine);
    if (!report.ok()) {
      r.status = "invalid: " + report.violations.front();
      rows.push_back(r);
      continue;
    }
    try {
      r.closed = power_closed_form(q);
      r.numeric = power_from_state(q, solve_steady_full(q).state);
      r.rel = std::abs(r.closed - r.numeric) /
              std::max({std::abs(r.closed), std::abs(r.numeric), 1e-12});
    } catch (const std::exception& e) {
      r.status = std::string("error: ") + e.what();
    }
    rows.push_back(r);
  }

  if (format == "csv") {
    std::ostringstream os;
    os << "# " << describe(params) << " sweep=" << sweep.var << "\n";
    os << sweep.var << ",power_closed_form,power_steady_state,rel_diff,status\n";
    for (const auto& r : rows) {
      std::string status = r.status;
      for (auto& c : status)
        if (c == ',') c = ';';
      os << fmt12(r.value) << ',' << fmt12(r.closed) << ',' << fmt12(r.numeric) << ','
         << fmt12(r.rel) << ',' << status << "\n";
    }
    write_output(output, os.str());
  } else {
    json out;
    out["meta"] = params_json(params);
    out["meta"]["sweep"] = {
        {"var", sweep.var}, {"lo", sweep.lo}, {"hi", sweep.hi}, {"count", sweep.count}};
    json jr = json::array();
    for (const auto& r : rows)
      jr.push_back({{"value", r.value},
                    {"power_closed_form", r.closed},
                    {"power_steady_state", r.numeric},
                    {"rel_diff", r.rel},
                    {"status", r.status}});
    out["rows"] = jr;
    write_output(output, out.dump(2) + "\n");
  }
  return 0;
}

Scheme parse_scheme(const std::string& s) {
  if (s == "over-p") return Scheme::over_p;
  if (s == "fixed-wh") return Scheme::fixed_wh;
  if (s == "fixed-wc") return Scheme::fixed_wc;
  if (s == "two-param") return Scheme::two_param;
  if (s == "sum") return Scheme::sum_constraint;
  if (s == "product") return Scheme::product_constraint;
  throw CLI::ValidationError("--scheme", "unknown scheme '" + s + "'");
}

PowerModel parse_model(const std::string& s) {
  if (s == "full") return PowerModel::full;
  if (s == "strong-ht") return PowerModel::strong_ht;
  if (s == "low-t") return PowerModel::low_t;
  throw CLI::ValidationError("--model", "unknown model '" + s + "'");
}

FluxKind parse_flux(const std::string& s) {
  if (s == "general") return FluxKind::general;
  if (s == "high-t") return FluxKind::high_t;
  if (s == "strong-ht") return FluxKind::strong_coupling_high_t;
  if (s == "low-t") return FluxKind::low_t;
  throw CLI::ValidationError("--flux", "unknown flux kind '" + s + "'");
}

int run_optimize(const EngineParams& params, const std::string& scheme_name,
                 const std::string& model_name, double tol, const std::string& output) {
  require_valid(params, ValidationMode::engine);
  const Scheme scheme = parse_scheme(scheme_name);
  const PowerModel model = parse_model(model_name);
  json out;
  out["meta"] = params_json(params);
  out["scheme"] = scheme_name;
  out["model"] = model_name;

  if (scheme == Scheme::over_p) {
    if (model != PowerModel::full)
      throw CLI::ValidationError("--scheme", "over-p runs on the full model");
    const auto r = maximize_power_over_p(params, tol > 0.0 ? tol : 1e-10);
    const double analytic = optimal_p(params);
    const auto clamped = clamp_optimal_p(analytic);
    out["argmax"] = {{"p", r.argmax[0]}};
    out["max_value"] = r.max_value;
    out["evaluations"] = r.evaluations;
    out["converged"] = r.converged;
    out["multimodal_warning"] = r.multimodal_warning;
    out["analytic"] = {
        {"p_star", analytic},
        {"p_star_clamped", clamped.value},
        {"advice", clamped.advice == PBoundaryAdvice::interior
                       ? "interior"
                       : (clamped.advice == PBoundaryAdvice::operate_near_plus_one
                              ? "operate near p=1"
                              : "operate near p=-1")},
        {"abs_diff_vs_argmax", std::abs(clamped.value - r.argmax[0])}};
    write_output(output, out.dump(2) + "\n");
    if (!r.converged) return kExitNumeric;
    return 0;
  }

  const auto res = optimize_power(params, scheme, model, tol);
  if (model == PowerModel::low_t) {
    out["argmax"] = {{"x", res.opt.argmax[0]}, {"y", res.opt.argmax[1]}};
  } else {
    out["argmax"] = {{"omega_c", res.opt.argmax[0]}, {"omega_h", res.opt.argmax[1]}};
  }
  out["max_value"] = res.opt.max_value;
  out["emp"] = res.emp;
  out["evaluations"] = res.opt.evaluations;
  out["converged"] = res.opt.converged;
  out["multimodal_warning"] = res.opt.multimodal_warning;

  const double eta = carnot(params);
  if (model == PowerModel::low_t && scheme == Scheme::two_param) {
    const double x = (eta - std::log1p(-eta)) / eta;
    const double y = (eta - (1.0 - eta) * std::log1p(-eta)) / eta;
    out["analytic"] = {{"x", x},
                       {"y", y},
                       {"emp", emp_low_t(eta)},
                       {"abs_diff_emp", std::abs(emp_low_t(eta) - res.emp)}};
  } else if (model == PowerModel::strong_ht && scheme == Scheme::fixed_wh) {
    const double emp = emp_fixed_wh(eta, params);
    out["analytic"] = {{"emp", emp}, {"abs_diff_emp", std::abs(emp - res.emp)}};
  } else {
    out["analytic"] = nullptr;
  }
  write_output(output, out.dump(2) + "\n");
  if (!res.opt.converged) return kExitNumeric;
  return 0;
}

int run_universality(const EngineParams& params, const std::string& flux_name,
                     int sample_count, const std::string& output) {
  require_valid(params, ValidationMode::engine);
  const FluxKind kind = parse_flux(flux_name);
  json out;
  out["meta"] = params_json(params);
  out["flux"] = flux_name;

  const auto defect = symmetry_defect(kind, params, sample_count);
  out["symmetry_defect"] = {{"max", defect.max_defect},
                            {"worst_x", defect.worst_x},
                            {"worst_y", defect.worst_y},
                            {"samples", sample_count}};

  const auto alpha = solve_alpha(params, kind);
  const double c2 = emp_second_order(params, kind);
  out["alpha"] = {{"value", alpha.value}, {"at_boundary", alpha.at_boundary}};
  out["emp_second_order"] = c2;

  json checks = json::array();
  const bool antisymmetric = defect.max_defect <= 1e-10;
  checks.push_back({{"name", "flux_antisymmetric"},
                    {"value", defect.max_defect},
                    {"pass", antisymmetric}});
  if (antisymmetric)
    checks.push_back({{"name", "universal_second_term"},
                      {"value", c2},
                      {"expected", 0.125},
                      {"tolerance", 1e-3},
                      {"pass", std::abs(c2 - 0.125) <= 1e-3}});
  if (kind == FluxKind::high_t) {
    const double eq16 = (1.0 + params.p) / (4.0 * (2.0 + params.p));
    checks.push_back({{"name", "high_t_symmetric_coefficient"},
                      {"value", c2},
                      {"expected", eq16},
                      {"tolerance", 1e-3},
                      {"pass", std::abs(c2 - eq16) <= 1e-3}});
  }
  out["checks"] = checks;

  if (kind == FluxKind::low_t || kind == FluxKind::general) {
    const auto series = extract_emp_series(
        params, Scheme::two_param,
        kind == FluxKind::low_t ? PowerModel::low_t : PowerModel::full);
    out["emp_series"] = {{"c1", series.c1},
                         {"c2", series.c2},
                         {"c3", series.c3},
                         {"residual", series.residual}};
  } else {
    out["emp_series"] = nullptr;
  }
  write_output(output, out.dump(2) + "\n");
  return 0;
}

int run_fig2(EngineParams params, const std::string& output) {
  require_valid(params, ValidationMode::engine);
  std::ostringstream os;
  os << "# " << describe(params) << " lambda in {0.1,0.2,0.3}\n";
  os << "p,power_lambda_0.1,power_lambda_0.2,power_lambda_0.3\n";
  for (int i = 0; i <= 100; ++i) {
    const double p = -1.0 + 0.02 * i;
    os << fmt12(p);
    for (const double lam : {0.1, 0.2, 0.3}) {
      EngineParams q = params;
      q.lambda = lam;
      q.p = p;
      os << ',' << fmt12(power_closed_form(q));
    }
    os << "\n";
  }
  write_output(output, os.str());
  return 0;
}

int run_fig3(EngineParams params, const std::string& output) {
  require_valid(params, ValidationMode::unrestricted);
  std::ostringstream os;
  os << "# " << describe(params) << " p in {-0.9,0,0.9}\n";
  os << "eta_c,emp_p_-0.9,emp_p_0,emp_p_0.9\n";
  for (int i = 0; i <= 49; ++i) {
    const double eta = 0.02 * i;
    os << fmt12(eta);
    for (const double p : {-0.9, 0.0, 0.9}) {
      EngineParams q = params;
      q.p = p;
      os << ',' << fmt12(eta == 0.0 ? 0.0 : emp_fixed_wh(eta, q));
    }
    os << "\n";
  }
  write_output(output, os.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"four-level laser heat engine: steady states, power, efficiency at "
               "maximum power, universality checks"};
  app.require_subcommand(1);

  struct CommonOpts {
    ParamFlags pf;
    std::string config, output, format = "csv";
    CLI::App* cmd = nullptr;
  };
  std::map<std::string, CommonOpts> opts;

  auto add_common = [&](const std::string& name, const std::string& desc,
                        const EngineParams& defaults) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    auto& o = opts[name];
    o.cmd = cmd;
    add_param_flags(cmd, o.pf, defaults);
    cmd->add_option("--config", o.config, "flat key=value parameter file");
    cmd->add_option("--output", o.output, "output path (default: stdout)");
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    return cmd;
  };

  const EngineParams base_defaults;
  EngineParams fig3_defaults;
  fig3_defaults.gamma_c = 1.0;
  fig3_defaults.gamma_h = 0.5;

  add_common("steady", "solve the steady state with both solvers and report observables",
             base_defaults);
  CLI::App* sweep_cmd = add_common(
      "power-sweep", "sweep one parameter and tabulate closed-form vs numeric power",
      base_defaults);
  std::string sweep_text;
  sweep_cmd->add_option("--sweep", sweep_text, "VAR:LO:HI:N")->required();

  CLI::App* opt_cmd =
      add_common("optimize", "maximize power under a named scheme", base_defaults);
  std::string scheme_name = "over-p", model_name = "full";
  double opt_tol = 0.0;
  opt_cmd->add_option("--scheme", scheme_name,
                      "over-p, fixed-wh, fixed-wc, two-param, sum, product");
  opt_cmd->add_option("--model", model_name, "full, strong-ht, low-t");
  opt_cmd->add_option("--tol", opt_tol, "optimizer tolerance override")
      ->check(CLI::PositiveNumber);

  CLI::App* uni_cmd = add_common(
      "universality", "symmetry defect, alpha, and EMP series for a flux kind",
      base_defaults);
  std::string flux_name = "general";
  int sample_count = 512;
  uni_cmd->add_option("--flux", flux_name, "general, high-t, strong-ht, low-t");
  uni_cmd->add_option("--samples", sample_count, "symmetry sample count")
      ->check(CLI::PositiveNumber);

  add_common("fig2", "power vs p dataset at the reference parameters", base_defaults);
  add_common("fig3", "EMP vs eta_c dataset for p in {-0.9, 0, 0.9}", fig3_defaults);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // config/usage problems exit 1; --help exits 0
  }

  const std::string name = app.get_subcommands().front()->get_name();
  auto& o = opts[name];
  try {
    if (!o.config.empty()) apply_config(o.config, o.pf);
    const EngineParams params = to_params(o.pf);
    if (name == "steady") return run_steady(params, o.output);
    if (name == "power-sweep")
      return run_power_sweep(params, parse_sweep(sweep_text), o.output, o.format);
    if (name == "optimize")
      return run_optimize(params, scheme_name, model_name, opt_tol, o.output);
    if (name == "universality")
      return run_universality(params, flux_name, sample_count, o.output);
    if (name == "fig2") return run_fig2(params, o.output);
    if (name == "fig3") return run_fig3(params, o.output);
  } catch (const CLI::Error& e) {
    std::cerr << json{{"error", e.what()}, {"exit_code", 1}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}, {"exit_code", kExitNumeric}}.dump() << "\n";
    return kExitNumeric;
  }
  return 1;
}
