#include "fracdyn/scenario.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include "fracdyn/error.hpp"
#include "fracdyn/fode.hpp"
#include "fracdyn/fpde.hpp"
#include "fracdyn/fractor.hpp"
#include "fracdyn/order_drivers.hpp"
#include "fracdyn/special_fn.hpp"
#include "fracdyn/vo_caputo.hpp"

namespace fracdyn {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

// Strict view over a JSON object: typed getters with a key path for error
// messages, and a final check that rejects unknown keys.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) config_error(path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  double number(const std::string& key) {
    const json& v = require(key);
    if (!v.is_number()) config_error(where(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) config_error(where(key), "must be finite");
    return d;
  }
  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  double positive(const std::string& key) {
    const double d = number(key);
    if (!(d > 0.0)) config_error(where(key), "must be positive");
    return d;
  }
  double positive(const std::string& key, double fallback) { return has(key) ? positive(key) : fallback; }

  std::size_t count(const std::string& key) {
    const json& v = require(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) config_error(where(key), "expected a non-negative integer");
    return static_cast<std::size_t>(v.get<long long>());
  }
  std::size_t count(const std::string& key, std::size_t fallback) { return has(key) ? count(key) : fallback; }

  std::string string(const std::string& key) {
    const json& v = require(key);
    if (!v.is_string()) config_error(where(key), "expected a string");
    return v.get<std::string>();
  }
  std::string string(const std::string& key, const std::string& fallback) {
    return has(key) ? string(key) : fallback;
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = require(key);
    if (!v.is_boolean()) config_error(where(key), "expected true or false");
    return v.get<bool>();
  }

  std::vector<double> numbers(const std::string& key) {
    const json& v = require(key);
    if (!v.is_array()) config_error(where(key), "expected an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) config_error(where(key), "expected an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  const json& child(const std::string& key) { return require(key); }

  std::string where(const std::string& key) const { return path_ + "." + key; }

  void finish() const {
    for (const auto& [key, value] : j_.items())
      if (!seen_.contains(key)) config_error(where(key), "unknown key");
  }

 private:
  const json& require(const std::string& key) {
    if (!j_.contains(key)) config_error(where(key), "missing required key");
    seen_.insert(key);
    return j_.at(key);
  }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

ForcingSpec parse_forcing(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  ForcingSpec f;
  const std::string type = r.string("type");
  if (type == "zero") {
    f.kind = ForcingSpec::Kind::Zero;
  } else if (type == "constant") {
    f.kind = ForcingSpec::Kind::Constant;
    f.value = r.number("value");
  } else if (type == "reciprocal") {
    f.kind = ForcingSpec::Kind::Reciprocal;
    f.scale = r.number("scale");
    f.rate = r.number("rate");
    if (f.rate < 0.0) config_error(r.where("rate"), "must be non-negative");
  } else {
    config_error(r.where("type"), "unknown forcing type '" + type + "'");
  }
  r.finish();
  return f;
}

AffineOrderMap parse_map(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  AffineOrderMap m;
  m.intercept = r.number("intercept");
  m.slope = r.number("slope");
  m.lo = r.number("lo", kAlphaMin);
  m.hi = r.number("hi", kAlphaMax);
  r.finish();
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    config_error(path, e.what());
  }
  return m;
}

void check_order_value(double alpha, const std::string& where) {
  if (!(alpha > 0.0 && alpha <= 1.0)) config_error(where, "order must lie in (0, 1]");
}

OrderSpec parse_order(const json& j, const std::string& path) {
  ObjectReader r(j, path);
  OrderSpec o;
  const std::string type = r.string("type");
  if (type == "constant") {
    o.kind = OrderSpec::Kind::Constant;
    o.alpha = r.number("alpha");
    check_order_value(o.alpha, r.where("alpha"));
  } else if (type == "linear_time") {
    o.kind = OrderSpec::Kind::LinearTime;
    o.intercept = r.number("intercept");
    o.slope = r.number("slope");
  } else if (type == "fuzzy") {
    o.kind = OrderSpec::Kind::Fuzzy;
    o.consequents = r.numbers("consequents");
    if (o.consequents.size() != 2) config_error(r.where("consequents"), "two-rule driver needs exactly 2 values");
    o.y0 = r.number("y0", 1.0);
    if (!(o.y0 >= -1.0 && o.y0 <= 1.0)) config_error(r.where("y0"), "must lie in [-1, 1]");
    o.map = parse_map(r.child("map"), r.where("map"));
    o.driver_dt = r.positive("dt", 0.0);
  } else if (type == "temperature") {
    o.kind = OrderSpec::Kind::Temperature;
    o.beta = r.number("beta");
    check_order_value(o.beta, r.where("beta"));
    o.map = parse_map(r.child("map"), r.where("map"));
    o.driver_dt = r.positive("dt", 0.0);
  } else {
    config_error(r.where("type"), "unknown order type '" + type + "'");
  }
  r.finish();
  return o;
}

void require_grid(double dt, double t_end, const std::string& where) {
  try {
    uniform_step_count(dt, t_end);
  } catch (const std::invalid_argument& e) {
    config_error(where, e.what());
  }
}

json forcing_json(const ForcingSpec& f) {
  switch (f.kind) {
    case ForcingSpec::Kind::Zero: return {{"type", "zero"}};
    case ForcingSpec::Kind::Constant: return {{"type", "constant"}, {"value", f.value}};
    case ForcingSpec::Kind::Reciprocal: return {{"type", "reciprocal"}, {"scale", f.scale}, {"rate", f.rate}};
  }
  return {};
}

json map_json(const AffineOrderMap& m) {
  return {{"intercept", m.intercept}, {"slope", m.slope}, {"lo", m.lo}, {"hi", m.hi}};
}

json order_json(const OrderSpec& o) {
  switch (o.kind) {
    case OrderSpec::Kind::Constant: return {{"type", "constant"}, {"alpha", o.alpha}};
    case OrderSpec::Kind::LinearTime:
      return {{"type", "linear_time"}, {"intercept", o.intercept}, {"slope", o.slope}};
    case OrderSpec::Kind::Fuzzy: {
      json j = {{"type", "fuzzy"}, {"consequents", o.consequents}, {"y0", o.y0}, {"map", map_json(o.map)}};
      if (o.driver_dt > 0.0) j["dt"] = o.driver_dt;
      return j;
    }
    case OrderSpec::Kind::Temperature: {
      json j = {{"type", "temperature"}, {"beta", o.beta}, {"map", map_json(o.map)}};
      if (o.driver_dt > 0.0) j["dt"] = o.driver_dt;
      return j;
    }
  }
  return {};
}

std::function<double(double)> build_forcing(const ForcingSpec& f) {
  switch (f.kind) {
    case ForcingSpec::Kind::Zero: return {};
    case ForcingSpec::Kind::Constant: return [v = f.value](double) { return v; };
    case ForcingSpec::Kind::Reciprocal:
      return [s = f.scale, r = f.rate](double t) { return s / (r * t + 1.0); };
  }
  return {};
}

// Driver trajectory (if any) together with the order source built from it.
struct BuiltOrder {
  OrderSource source = OrderSource::constant(kAlphaMax);
  std::optional<Trajectory> driver;
};

BuiltOrder build_order(const OrderSpec& o, double dt, double t_end) {
  const double driver_dt = o.driver_dt > 0.0 ? o.driver_dt : dt;
  switch (o.kind) {
    case OrderSpec::Kind::Constant: return {OrderSource::constant(o.alpha), {}};
    case OrderSpec::Kind::LinearTime:
      return {OrderSource::time_function([a = o.intercept, b = o.slope](double t) { return a + b * t; }), {}};
    case OrderSpec::Kind::Fuzzy: {
      auto sys = TSFuzzySystem::two_rule(o.consequents[0], o.consequents[1], o.y0);
      Trajectory y = fuzzy_solve(sys, driver_dt, t_end);
      return {OrderSource::driver_system(y, o.map), y};
    }
    case OrderSpec::Kind::Temperature: {
      Trajectory temp = solve_temperature(o.beta, driver_dt, t_end).state;
      return {OrderSource::driver_system(temp, o.map), temp};
    }
  }
  return {};
}

std::vector<double> time_column(const Trajectory& traj) {
  std::vector<double> t(traj.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = traj.time(i);
  return t;
}

std::vector<double> time_column(std::size_t count, double dt) {
  std::vector<double> t(count);
  for (std::size_t i = 0; i < count; ++i) t[i] = static_cast<double>(i) * dt;
  return t;
}

ScenarioKind parse_kind(const std::string& s, const std::string& where) {
  if (s == "relaxation") return ScenarioKind::Relaxation;
  if (s == "diffusion") return ScenarioKind::Diffusion;
  if (s == "temperature") return ScenarioKind::Temperature;
  if (s == "coupled") return ScenarioKind::Coupled;
  if (s == "fractor-fit") return ScenarioKind::FractorFit;
  if (s == "derivative-check") return ScenarioKind::DerivativeCheck;
  config_error(where, "unknown scenario '" + s + "'");
}

bool needs_time_grid(ScenarioKind kind) { return kind != ScenarioKind::FractorFit; }

// Tables for each scenario kind.

std::vector<std::pair<std::string, CsvTable>> relaxation_tables(const ScenarioConfig& c, const RelaxationSpec& s) {
  ScalarFodeProblem p;
  const BuiltOrder order = build_order(s.order, c.dt, c.t_end);
  p.order = order.source;
  p.lin_coeff = s.lin_coeff;
  p.forcing = build_forcing(s.forcing);
  p.x0 = s.x0;
  p.t_end = c.t_end;
  const FodeSolution sol = solve_scalar_fode(p, c.dt);
  const auto t = time_column(sol.state);
  return {{"_order.csv", {{"t", "alpha"}, {t, sol.orders}}},
          {"_relax.csv", {{"t", "x"}, {t, sol.state.values()}}}};
}

std::vector<std::pair<std::string, CsvTable>> temperature_tables(const ScenarioConfig& c, const TemperatureSpec& s) {
  const FodeSolution sol = solve_temperature(s.beta, c.dt, c.t_end);
  return {{"_temp.csv", {{"t", "T"}, {time_column(sol.state), sol.state.values()}}}};
}

std::vector<std::pair<std::string, CsvTable>> diffusion_tables(const ScenarioConfig& c, const DiffusionSpec& s) {
  DiffusionProblem p;
  p.diffusivity = s.diffusivity;
  p.length = s.length;
  p.t_end = c.t_end;
  if (s.source != 0.0) p.source = [q = s.source](double, double) { return q; };
  switch (s.initial) {
    case DiffusionSpec::Initial::Sin: p.initial = [](double x) { return std::sin(x); }; break;
    case DiffusionSpec::Initial::SinPi:
      p.initial = [L = s.length](double x) { return std::sin(std::numbers::pi * x / L); };
      break;
    case DiffusionSpec::Initial::Zero: p.initial = [](double) { return 0.0; }; break;
  }
  p.left = [v = s.left](double) { return v; };
  p.right = [v = s.right](double) { return v; };
  const BuiltOrder order = build_order(s.order, c.dt, c.t_end);
  p.order = order.source;

  const Field field = solve_vo_diffusion(p, s.nx, c.dt);
  const auto t = time_column(field.rows(), field.dt());

  std::vector<std::pair<std::string, CsvTable>> out;
  if (order.driver && s.order.kind == OrderSpec::Kind::Temperature)
    out.push_back({"_temp.csv", {{"t", "T"}, {time_column(*order.driver), order.driver->values()}}});
  out.push_back({"_order.csv", {{"t", "alpha"}, {t, field.orders()}}});

  std::vector<double> trace(field.rows());
  for (std::size_t n = 0; n < field.rows(); ++n) trace[n] = probe(field, s.probe_x, field.t(n));
  out.push_back({"_u_at_x" + format_short(s.probe_x) + ".csv", {{"t", "u"}, {t, trace}}});

  if (s.write_field) {
    CsvTable table;
    table.header.push_back("t");
    table.columns.push_back(t);
    for (std::size_t i = 0; i <= field.nx(); ++i) {
      table.header.push_back("x=" + format_value(field.x(i)));
      std::vector<double> col(field.rows());
      for (std::size_t n = 0; n < field.rows(); ++n) col[n] = field(n, i);
      table.columns.push_back(std::move(col));
    }
    out.push_back({"_field.csv", std::move(table)});
  }
  return out;
}

std::vector<std::pair<std::string, CsvTable>> coupled_tables(const ScenarioConfig& c, const CoupledSpec& s) {
  CoupledSystem sys;
  for (const auto& sub : s.subsystems) {
    CoupledSubsystem cs;
    cs.rhs.lin_coeff = sub.lin_coeff;
    cs.rhs.forcing = build_forcing(sub.forcing);
    cs.x0 = sub.x0;
    cs.order = sub.source ? affine_of_state(*sub.source, sub.map) : constant_order(sub.alpha);
    sys.subsystems.push_back(std::move(cs));
  }
  const CoupledSolution sol = solve_coupled(sys, c.dt, c.t_end);
  CsvTable table;
  table.header.push_back("t");
  table.columns.push_back(time_column(sol.states.front()));
  for (std::size_t i = 0; i < sol.states.size(); ++i) {
    table.header.push_back("x" + std::to_string(i + 1));
    table.columns.push_back(sol.states[i].values());
  }
  for (std::size_t i = 0; i < sol.orders.size(); ++i) {
    table.header.push_back("alpha" + std::to_string(i + 1));
    table.columns.push_back(sol.orders[i]);
  }
  return {{"_coupled.csv", std::move(table)}};
}

std::vector<std::pair<std::string, CsvTable>> fractor_tables(const ScenarioConfig& c, const FractorFitSpec& s) {
  std::vector<double> temps, lam, lam_phase, mag, lam_true;
  bool have_truth = false;
  auto add = [&](double temperature, const FrequencySweep& sweep) {
    const OrderEstimate est = estimate_order(sweep, s.tau);
    temps.push_back(temperature);
    lam.push_back(est.lambda);
    lam_phase.push_back(est.lambda_phase);
    mag.push_back(est.magnitude);
  };
  for (const auto& file : s.sweeps) {
    std::ifstream in(file.csv);
    if (!in) throw ConfigError("cannot open sweep file " + file.csv.string());
    add(file.temperature, read_sweep_csv(in));
    lam_true.push_back(std::nan(""));
  }
  if (s.synthetic) {
    have_truth = true;
    const auto& g = *s.synthetic;
    const auto pairs = synthesize_lambda_temperature(g.p1, g.p2, g.p1_stderr, g.t_lo, g.t_hi, g.temperatures, c.seed);
    std::uint64_t sweep_seed = c.seed;
    for (const auto& pr : pairs) {
      // Each synthetic temperature gets its own constant-phase model.
      const FractorModel model{g.magnitude, s.tau, 0.0, pr.lambda};
      const FrequencySweep sweep =
          g.rel_noise > 0.0
              ? synthesize_noisy_sweep(model, pr.temperature, g.omega_min, g.omega_max, g.points, g.rel_noise, ++sweep_seed)
              : synthesize_sweep(model, pr.temperature, g.omega_min, g.omega_max, g.points);
      add(pr.temperature, sweep);
      lam_true.push_back(pr.lambda);
    }
  }
  std::vector<TemperatureOrder> pairs;
  for (std::size_t i = 0; i < temps.size(); ++i) pairs.push_back({temps[i], lam[i]});
  const LineFit fit = fit_lambda_temperature(pairs);

  CsvTable orders{{"temperature", "lambda", "lambda_phase", "magnitude"}, {temps, lam, lam_phase, mag}};
  if (have_truth) {
    orders.header.push_back("lambda_synthetic");
    orders.columns.push_back(lam_true);
  }
  CsvTable line{{"p1", "p2", "p1_stderr", "p2_stderr", "count"},
                {{fit.slope}, {fit.intercept}, {fit.slope_stderr}, {fit.intercept_stderr}, {static_cast<double>(pairs.size())}}};
  return {{"_lambda.csv", std::move(orders)}, {"_fit.csv", std::move(line)}};
}

std::vector<std::pair<std::string, CsvTable>> derivative_tables(const ScenarioConfig& c, const DerivativeCheckSpec& s) {
  const auto& coef = s.polynomial;
  auto f = [&](double t) {
    double v = 0.0;
    for (std::size_t k = coef.size(); k-- > 0;) v = v * t + coef[k];
    return v;
  };
  auto f_prime = [&](double t) {
    double v = 0.0;
    for (std::size_t k = coef.size(); k-- > 1;) v = v * t + static_cast<double>(k) * coef[k];
    return v;
  };
  const std::size_t steps = uniform_step_count(c.dt, s.t);
  std::vector<double> samples(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j) samples[j] = f(static_cast<double>(j) * c.dt);

  std::vector<double> alpha_col, l1_col, quad_col, exact_col;
  for (double a : s.alphas) {
    const double alpha = clamp_order(a);
    double exact = 0.0;
    for (std::size_t k = 1; k < coef.size(); ++k) {
      const double kd = static_cast<double>(k);
      exact += coef[k] * gamma(kd + 1.0) / gamma(kd + 1.0 - alpha) * std::pow(s.t, kd - alpha);
    }
    alpha_col.push_back(alpha);
    l1_col.push_back(caputo_l1(samples, c.dt, alpha));
    quad_col.push_back(caputo_quadrature(f_prime, alpha, s.t));
    exact_col.push_back(exact);
  }
  return {{"_derivative.csv",
           {{"alpha", "caputo_l1", "caputo_quadrature", "analytic"}, {alpha_col, l1_col, quad_col, exact_col}}}};
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Relaxation: return "relaxation";
    case ScenarioKind::Diffusion: return "diffusion";
    case ScenarioKind::Temperature: return "temperature";
    case ScenarioKind::Coupled: return "coupled";
    case ScenarioKind::FractorFit: return "fractor-fit";
    case ScenarioKind::DerivativeCheck: return "derivative-check";
  }
  return "unknown";
}

ScenarioConfig parse_config(const json& doc) {
  ObjectReader r(doc, "config");
  ScenarioConfig c;
  c.kind = parse_kind(r.string("scenario"), r.where("scenario"));
  c.output = r.string("output");
  if (c.output.empty() || c.output.filename().empty()) config_error(r.where("output"), "needs a file prefix");
  if (r.has("seed")) {
    const json& s = r.child("seed");
    if (!s.is_number_unsigned()) config_error(r.where("seed"), "expected a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (needs_time_grid(c.kind)) {
    c.dt = r.number("dt");
    if (!(c.dt > 0.0)) config_error(r.where("dt"), "must be positive");
  }
  if (needs_time_grid(c.kind) && c.kind != ScenarioKind::DerivativeCheck) {
    c.t_end = r.number("t_end");
    if (!(c.t_end > 0.0)) config_error(r.where("t_end"), "must be positive");
    require_grid(c.dt, c.t_end, "config.t_end");
  }

  switch (c.kind) {
    case ScenarioKind::Relaxation: {
      RelaxationSpec s;
      if (r.has("B") && r.has("lin_coeff")) config_error("config", "give either B or lin_coeff, not both");
      if (r.has("B")) s.lin_coeff = -r.number("B");
      else s.lin_coeff = r.number("lin_coeff", -1.0);
      s.x0 = r.number("x0", 1.0);
      if (r.has("forcing")) s.forcing = parse_forcing(r.child("forcing"), r.where("forcing"));
      s.order = parse_order(r.child("order"), r.where("order"));
      c.spec = s;
      break;
    }
    case ScenarioKind::Temperature: {
      TemperatureSpec s;
      s.beta = r.number("beta");
      check_order_value(s.beta, r.where("beta"));
      c.spec = s;
      break;
    }
    case ScenarioKind::Diffusion: {
      DiffusionSpec s;
      s.diffusivity = r.positive("K");
      s.length = r.positive("L", 1.0);
      s.nx = r.count("nx", 100);
      if (s.nx < 3) config_error(r.where("nx"), "must be at least 3");
      const std::string ic = r.string("initial", "sin");
      if (ic == "sin") s.initial = DiffusionSpec::Initial::Sin;
      else if (ic == "sin_pi") s.initial = DiffusionSpec::Initial::SinPi;
      else if (ic == "zero") s.initial = DiffusionSpec::Initial::Zero;
      else config_error(r.where("initial"), "expected sin, sin_pi, or zero");
      s.left = r.number("left", 0.0);
      s.right = r.number("right", 0.0);
      s.source = r.number("source", 0.0);
      s.order = parse_order(r.child("order"), r.where("order"));
      s.probe_x = r.number("probe_x", 0.5 * s.length);
      if (!(s.probe_x >= 0.0 && s.probe_x <= s.length)) config_error(r.where("probe_x"), "must lie in [0, L]");
      s.write_field = r.boolean("write_field", false);
      c.spec = s;
      break;
    }
    case ScenarioKind::Coupled: {
      CoupledSpec s;
      const json& subs = r.child("subsystems");
      if (!subs.is_array() || subs.empty()) config_error(r.where("subsystems"), "expected a non-empty array");
      for (std::size_t i = 0; i < subs.size(); ++i) {
        const std::string path = r.where("subsystems") + "[" + std::to_string(i) + "]";
        ObjectReader sr(subs[i], path);
        SubsystemSpec sub;
        sub.lin_coeff = sr.number("lin_coeff", 0.0);
        sub.x0 = sr.number("x0");
        if (sr.has("forcing")) sub.forcing = parse_forcing(sr.child("forcing"), sr.where("forcing"));
        ObjectReader order(sr.child("order"), sr.where("order"));
        const std::string type = order.string("type");
        if (type == "constant") {
          sub.alpha = order.number("alpha");
          check_order_value(sub.alpha, order.where("alpha"));
        } else if (type == "affine_of_state") {
          sub.source = order.count("source");
          if (*sub.source >= subs.size()) config_error(order.where("source"), "no such subsystem");
          sub.map = parse_map(order.child("map"), order.where("map"));
        } else {
          config_error(order.where("type"), "expected constant or affine_of_state");
        }
        order.finish();
        sr.finish();
        s.subsystems.push_back(sub);
      }
      c.spec = s;
      break;
    }
    case ScenarioKind::FractorFit: {
      FractorFitSpec s;
      s.tau = r.positive("tau", 1.0);
      if (r.has("sweeps")) {
        const json& sweeps = r.child("sweeps");
        if (!sweeps.is_array()) config_error(r.where("sweeps"), "expected an array");
        for (std::size_t i = 0; i < sweeps.size(); ++i) {
          ObjectReader sr(sweeps[i], r.where("sweeps") + "[" + std::to_string(i) + "]");
          s.sweeps.push_back({sr.number("temperature"), sr.string("csv")});
          sr.finish();
        }
      }
      if (r.has("synthetic")) {
        ObjectReader g(r.child("synthetic"), r.where("synthetic"));
        SyntheticFractorSpec syn;
        syn.magnitude = g.positive("K", 1.0);
        syn.p1 = g.number("p1");
        syn.p2 = g.number("p2");
        syn.p1_stderr = g.number("p1_stderr", 0.0);
        if (syn.p1_stderr < 0.0) config_error(g.where("p1_stderr"), "must be non-negative");
        syn.t_lo = g.number("t_lo", 25.0);
        syn.t_hi = g.number("t_hi", 60.0);
        if (!(syn.t_hi > syn.t_lo)) config_error(g.where("t_hi"), "must exceed t_lo");
        syn.temperatures = g.count("temperatures", 15);
        if (syn.temperatures < 2) config_error(g.where("temperatures"), "must be at least 2");
        syn.omega_min = g.positive("omega_min", 1.0);
        syn.omega_max = g.positive("omega_max", 1e4);
        if (!(syn.omega_max > syn.omega_min)) config_error(g.where("omega_max"), "must exceed omega_min");
        syn.points = g.count("points", 50);
        if (syn.points < 2) config_error(g.where("points"), "must be at least 2");
        syn.rel_noise = g.number("rel_noise", 0.0);
        if (syn.rel_noise < 0.0) config_error(g.where("rel_noise"), "must be non-negative");
        g.finish();
        s.synthetic = syn;
      }
      const std::size_t total = s.sweeps.size() + (s.synthetic ? s.synthetic->temperatures : 0);
      if (total < 2) config_error("config", "fractor-fit needs at least two sweeps (files or synthetic)");
      c.spec = s;
      break;
    }
    case ScenarioKind::DerivativeCheck: {
      DerivativeCheckSpec s;
      s.polynomial = r.numbers("polynomial");
      if (s.polynomial.empty()) config_error(r.where("polynomial"), "needs at least one coefficient");
      s.alphas = r.numbers("alphas");
      if (s.alphas.empty()) config_error(r.where("alphas"), "needs at least one order");
      for (double a : s.alphas) check_order_value(a, r.where("alphas"));
      s.t = r.positive("t", 1.0);
      require_grid(c.dt, s.t, "config.t");
      c.spec = s;
      break;
    }
  }
  r.finish();

  // Normalized echo for the manifest and for reproducing the run.
  json echo = {{"scenario", std::string(to_string(c.kind))}, {"output", c.output.generic_string()}, {"seed", c.seed}};
  if (needs_time_grid(c.kind)) echo["dt"] = c.dt;
  if (c.t_end > 0.0) echo["t_end"] = c.t_end;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, RelaxationSpec>) {
          echo["lin_coeff"] = s.lin_coeff;
          echo["x0"] = s.x0;
          echo["forcing"] = forcing_json(s.forcing);
          echo["order"] = order_json(s.order);
        } else if constexpr (std::is_same_v<T, TemperatureSpec>) {
          echo["beta"] = s.beta;
        } else if constexpr (std::is_same_v<T, DiffusionSpec>) {
          static constexpr const char* kInitial[] = {"sin", "sin_pi", "zero"};
          echo["K"] = s.diffusivity;
          echo["L"] = s.length;
          echo["nx"] = s.nx;
          echo["initial"] = kInitial[static_cast<int>(s.initial)];
          echo["left"] = s.left;
          echo["right"] = s.right;
          echo["source"] = s.source;
          echo["order"] = order_json(s.order);
          echo["probe_x"] = s.probe_x;
          echo["write_field"] = s.write_field;
        } else if constexpr (std::is_same_v<T, CoupledSpec>) {
          json subs = json::array();
          for (const auto& sub : s.subsystems) {
            json o = sub.source ? json{{"type", "affine_of_state"}, {"source", *sub.source}, {"map", map_json(sub.map)}}
                                : json{{"type", "constant"}, {"alpha", sub.alpha}};
            subs.push_back({{"lin_coeff", sub.lin_coeff}, {"x0", sub.x0}, {"forcing", forcing_json(sub.forcing)}, {"order", o}});
          }
          echo["subsystems"] = subs;
        } else if constexpr (std::is_same_v<T, FractorFitSpec>) {
          echo["tau"] = s.tau;
          json sweeps = json::array();
          for (const auto& f : s.sweeps) sweeps.push_back({{"temperature", f.temperature}, {"csv", f.csv.generic_string()}});
          if (!sweeps.empty()) echo["sweeps"] = sweeps;
          if (s.synthetic) {
            const auto& g = *s.synthetic;
            echo["synthetic"] = {{"K", g.magnitude},         {"p1", g.p1},
                                 {"p2", g.p2},               {"p1_stderr", g.p1_stderr},
                                 {"t_lo", g.t_lo},           {"t_hi", g.t_hi},
                                 {"temperatures", g.temperatures}, {"omega_min", g.omega_min},
                                 {"omega_max", g.omega_max}, {"points", g.points},
                                 {"rel_noise", g.rel_noise}};
          }
        } else if constexpr (std::is_same_v<T, DerivativeCheckSpec>) {
          echo["polynomial"] = s.polynomial;
          echo["alphas"] = s.alphas;
          echo["t"] = s.t;
        }
      },
      c.spec);
  c.echo = std::move(echo);
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
  return parse_config(doc);
}

std::vector<std::string> preset_names() { return {"case1", "case2", "fractor-demo"}; }

ScenarioConfig preset(std::string_view name) {
  const auto map = [](const AffineOrderMap& m) { return json{{"intercept", m.intercept}, {"slope", m.slope}}; };
  if (name == "case1") {
    // Relaxation with B = 1 and order 1 - 0.2 y(t) from the two-rule fuzzy driver.
    return parse_config({{"scenario", "relaxation"},
                         {"output", "case1"},
                         {"dt", 0.01},
                         {"t_end", 10.0},
                         {"B", 1.0},
                         {"x0", 1.0},
                         {"forcing", {{"type", "zero"}}},
                         {"order",
                          {{"type", "fuzzy"}, {"consequents", {0.0, -1.0}}, {"y0", 1.0}, {"map", map(kFuzzyRelaxationOrderMap)}}}});
  }
  if (name == "case2") {
    // Subdiffusion with order 0.8 + 0.005 T(t), T from the beta = 0.9 heat model.
    return parse_config({{"scenario", "diffusion"},
                         {"output", "case2"},
                         {"dt", 0.01},
                         {"t_end", 5.0},
                         {"K", 0.1},
                         {"L", 1.0},
                         {"nx", 100},
                         {"initial", "sin"},
                         {"left", 0.0},
                         {"right", 0.0},
                         {"source", 0.0},
                         {"probe_x", 0.5},
                         {"order", {{"type", "temperature"}, {"beta", 0.9}, {"map", map(kTemperatureOrderMap)}}}});
  }
  if (name == "fractor-demo") {
    // Synthetic data scattered around the reference temperature-order line.
    return parse_config({{"scenario", "fractor-fit"},
                         {"output", "fractor"},
                         {"tau", 1.0},
                         {"synthetic",
                          {{"K", 1.0},
                           {"p1", kFractorP1},
                           {"p2", kFractorP2},
                           {"p1_stderr", kFractorP1Stderr},
                           {"t_lo", 25.0},
                           {"t_hi", 60.0},
                           {"temperatures", 15},
                           {"omega_min", 1.0},
                           {"omega_max", 1e4},
                           {"points", 50},
                           {"rel_noise", 0.0}}}});
  }
  throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::pair<std::string, CsvTable>> compute_tables(const ScenarioConfig& config) {
  try {
    return std::visit(
        [&](const auto& s) -> std::vector<std::pair<std::string, CsvTable>> {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, RelaxationSpec>) return relaxation_tables(config, s);
          else if constexpr (std::is_same_v<T, TemperatureSpec>) return temperature_tables(config, s);
          else if constexpr (std::is_same_v<T, DiffusionSpec>) return diffusion_tables(config, s);
          else if constexpr (std::is_same_v<T, CoupledSpec>) return coupled_tables(config, s);
          else if constexpr (std::is_same_v<T, FractorFitSpec>) return fractor_tables(config, s);
          else return derivative_tables(config, s);
        },
        config.spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

RunResult run(const ScenarioConfig& config, const std::optional<std::filesystem::path>& out_dir) {
  const auto start = std::chrono::steady_clock::now();
  const auto tables = compute_tables(config);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::filesystem::path prefix = out_dir ? *out_dir / config.output : config.output;
  std::error_code ec;
  if (prefix.has_parent_path()) std::filesystem::create_directories(prefix.parent_path(), ec);
  if (ec) throw ConfigError("cannot create output directory " + prefix.parent_path().string() + ": " + ec.message());

  RunResult result;
  result.wall_seconds = wall;
  const std::string base = prefix.string();
  try {
    for (const auto& [suffix, table] : tables) {
      const std::filesystem::path path = base + suffix;
      write_csv(path, table);
      result.files.push_back(path);
    }
    const std::filesystem::path manifest = base + "_manifest.txt";
    std::ofstream out(manifest);
    if (!out) throw std::runtime_error("cannot open " + manifest.string());
    out << "fracdyn " << FRACDYN_VERSION << '\n';
    out << "scenario: " << to_string(config.kind) << '\n';
    out << "seed: " << config.seed << '\n';
    out << "wall_time_s: " << wall << '\n';
    out << "outputs:\n";
    for (const auto& f : result.files) out << "  " << f.filename().string() << '\n';
    out << "config:\n" << config.echo.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + manifest.string());
    result.files.push_back(manifest);
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
  return result;
}

}  // namespace fracdyn
