#include "lpaffine/acceptance.hpp"
#include "lpaffine/affine_surface.hpp"
#include "lpaffine/descriptor.hpp"
#include "lpaffine/errors.hpp"
#include "lpaffine/oracles.hpp"
#include "lpaffine/surface_body.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace lpaffine;
using Record = nlohmann::ordered_json;

namespace {

constexpr int kExitVerification = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNonConvergence = 3;

struct Options {
  std::vector<std::string> bodies;
  std::vector<std::string> p_list;
  std::vector<std::string> alpha_list;
  std::string dir = "PQ";
  double tol = 1e-5;
  std::uint64_t seed = kAcceptanceSeed;
  std::string plot_out;
  std::string s_grid = "0.1:0.5:7";
  std::string weight = "const";
  std::vector<std::string> mixed_bodies;
  bool illumination = false;
  bool timing = false;
  std::string suite = "all";
  std::string oracle_kind = "lr";
  int n = 2;
  double r = 3.0;
  double rho = 1.0;
  double s = 0.1;
};

struct LoadedBody {
  ConvexBody body;
  std::string digest;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedBody load(const std::string& path) {
  const std::string text = read_file(path);
  return {parse_body(text), body_digest(text)};
}

std::vector<LoadedBody> load_all(const std::vector<std::string>& paths) {
  std::vector<LoadedBody> out;
  for (const auto& p : paths) out.push_back(load(p));
  return out;
}

std::string joined_digest(const std::vector<LoadedBody>& bodies) {
  std::string d;
  for (const auto& b : bodies) d += (d.empty() ? "" : "+") + b.digest;
  return d;
}

double parse_real(const std::string& token) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + token + "'");
  }
  if (used != token.size()) throw InvalidArgument("not a number: '" + token + "'");
  return v;
}

bool is_plus_inf(const std::string& t) { return t == "inf" || t == "+inf"; }

PParameter parse_p(const std::string& t, int n) {
  if (is_plus_inf(t)) return PParameter::plus_inf();
  if (t == "-inf") return PParameter::minus_inf();
  if (t == "-n+") return PParameter::at_minus_n_right();
  if (t == "-n-") return PParameter::at_minus_n_left();
  return PParameter::finite(parse_real(t), n);
}

Order parse_alpha(const std::string& t) {
  if (is_plus_inf(t)) return Order::plus_inf();
  if (t == "-inf") return Order::minus_inf();
  if (t == "kl") return Order::kl();
  const double a = parse_real(t);
  return a == 1.0 ? Order::kl() : Order::finite(a);
}

Dir parse_dir(const std::string& t) {
  if (t == "PQ") return Dir::PQ;
  if (t == "QP") return Dir::QP;
  throw InvalidArgument("--dir must be PQ or QP");
}

std::vector<double> parse_grid(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw InvalidArgument("--s-grid must be s0:ratio:count");
  const double count = parse_real(parts[2]);
  if (count < 2 || count != std::floor(count)) throw InvalidArgument("--s-grid count must be an integer ≥ 2");
  return geometric_grid(parse_real(parts[0]), parse_real(parts[1]), static_cast<int>(count));
}

BoundaryWeight parse_weight(const Options& o, const ConvexBody& K) {
  const std::string& w = o.weight;
  if (w == "const") return weight_constant(1.0);
  if (w.rfind("const:", 0) == 0) return weight_constant(parse_real(w.substr(6)));
  if (w.rfind("fp:", 0) == 0) {
    const std::string t = w.substr(3);
    if (is_plus_inf(t)) return weight_f_p(K, INFINITY);
    if (t == "-inf") return weight_f_p(K, -INFINITY);
    return weight_f_p(K, parse_real(t));
  }
  if (w == "fqp") return weight_f_kl(K, KlVariant::QP);
  if (w == "fpq") return weight_f_kl(K, KlVariant::PQ_corrected);
  if (w == "fpq-printed") return weight_f_kl(K, KlVariant::PQ_as_printed);
  if (w == "mixed") {
    if (o.p_list.size() != 1) throw InvalidArgument("--weight mixed needs exactly one --p");
    std::vector<ConvexBody> bodies;
    for (const auto& b : load_all(o.mixed_bodies)) bodies.push_back(b.body);
    if (bodies.empty()) throw InvalidArgument("--weight mixed needs --mixed-body");
    return weight_mixed(bodies, parse_real(o.p_list[0]));
  }
  throw InvalidArgument("unknown --weight '" + w + "'");
}

nlohmann::json extended(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string classify(double v) {
  if (std::isnan(v)) return "undefined";
  if (std::isinf(v)) return v > 0 ? "plus_infinity" : "minus_infinity";
  return "finite";
}

class Emitter {
 public:
  explicit Emitter(bool timing) : timing_(timing) {}

  void start() { t0_ = std::chrono::steady_clock::now(); }

  void emit(const std::string& command, const std::string& digest, Record parameters, double value,
            double err_estimate, const std::string& classification) {
    const double wall =
        timing_ ? std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count() : 0.0;
    Record r;
    r["command"] = command;
    r["body_digest"] = digest;
    r["parameters"] = std::move(parameters);
    r["value"] = extended(value);
    r["err_estimate"] = extended(err_estimate);
    r["classification"] = classification;
    r["wall_time"] = wall;
    std::cout << r.dump() << '\n';
  }

 private:
  bool timing_;
  std::chrono::steady_clock::time_point t0_;
};

const LoadedBody& single_body(const std::vector<LoadedBody>& bodies) {
  if (bodies.size() != 1) throw InvalidArgument("exactly one --body is required");
  return bodies.front();
}

int run_asp(const Options& o, Emitter& out) {
  const auto bodies = load_all(o.bodies);
  const LoadedBody& b = single_body(bodies);
  if (o.p_list.empty()) throw InvalidArgument("--p is required");
  for (const auto& t : o.p_list) {
    const PParameter p = parse_p(t, b.body.dim());
    out.start();
    const ExtendedValue v = as_p(b.body, p);
    out.emit("asp", b.digest, {{"p", p.to_string()}, {"reason", to_string(v.reason)}}, v.value,
             v.err_estimate, classify(v.value));
  }
  return 0;
}

int run_renyi(const Options& o, Emitter& out) {
  const auto bodies = load_all(o.bodies);
  const LoadedBody& b = single_body(bodies);
  if (o.alpha_list.empty()) throw InvalidArgument("--alpha is required");
  const Dir dir = parse_dir(o.dir);
  for (const auto& t : o.alpha_list) {
    const Order order = parse_alpha(t);
    out.start();
    const ExtendedValue v = renyi(b.body, order, dir);
    out.emit("renyi", b.digest,
             {{"alpha", order.to_string()}, {"dir", to_string(dir)}, {"reason", to_string(v.reason)}},
             v.value, v.err_estimate, classify(v.value));
  }
  return 0;
}

int run_mixed(const Options& o, Emitter& out) {
  const auto loaded = load_all(o.bodies);
  if (loaded.empty()) throw InvalidArgument("--body is required");
  std::vector<ConvexBody> bodies;
  for (const auto& b : loaded) bodies.push_back(b.body);
  const std::string digest = joined_digest(loaded);
  if (o.p_list.empty() && o.alpha_list.empty()) throw InvalidArgument("--p or --alpha is required");
  for (const auto& t : o.p_list) {
    double p = 0.0;
    if (is_plus_inf(t)) {
      p = INFINITY;
    } else if (t == "-inf") {
      p = -INFINITY;
    } else {
      p = parse_real(t);
    }
    out.start();
    const double v = mixed_as_p(bodies, p);
    out.emit("mixed", digest, {{"quantity", "mixed_asp"}, {"p", t}}, v, 0.0, classify(v));
  }
  const Dir dir = parse_dir(o.dir);
  for (const auto& t : o.alpha_list) {
    const Order order = parse_alpha(t);
    out.start();
    const ExtendedValue v = mixed_renyi(bodies, order, dir);
    out.emit("mixed", digest,
             {{"quantity", "mixed_renyi"}, {"alpha", order.to_string()}, {"dir", to_string(dir)},
              {"reason", to_string(v.reason)}},
             v.value, v.err_estimate, classify(v.value));
  }
  return 0;
}

int run_omega(const Options& o, Emitter& out) {
  const auto bodies = load_all(o.bodies);
  const LoadedBody& b = single_body(bodies);
  out.start();
  const double w = omega(b.body);
  out.emit("omega", b.digest, {{"quantity", "omega"}}, w, 0.0, classify(w));
  out.start();
  const double a = a_invariant(b.body);
  out.emit("omega", b.digest, {{"quantity", "a_invariant"}}, a, 0.0, classify(a));
  for (const auto& t : o.p_list) {
    const double p = parse_real(t);
    out.start();
    const double res = omega_limit_diagnostic(b.body, {p}).front();
    out.emit("omega", b.digest, {{"quantity", "limit_residual"}, {"p", p}}, res, 0.0, classify(res));
  }
  return 0;
}

void write_plot(const std::string& path, const SurfaceBodyResult& r) {
  std::ofstream csv(path);
  if (!csv) throw InvalidArgument("cannot write '" + path + "'");
  csv << "s,volume,quotient\n";
  char line[128];
  for (std::size_t i = 0; i < r.s_grid.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", r.s_grid[i], r.volumes[i], r.quotients[i]);
    csv << line;
  }
}

int run_surface_body(const Options& o, Emitter& out) {
  const auto bodies = load_all(o.bodies);
  const LoadedBody& b = single_body(bodies);
  const BoundaryWeight f = parse_weight(o, b.body);
  const std::vector<double> grid = parse_grid(o.s_grid);
  out.start();
  const SurfaceBodyResult r = limit_quotient(b.body, f, grid, o.illumination, o.tol);
  if (!o.plot_out.empty()) write_plot(o.plot_out, r);
  const double err =
      r.quotients.empty() ? 0.0 : std::abs(r.scaled_limit - r.c_n * r.quotients.back());
  std::string cls = classify(r.scaled_limit);
  if (f.degenerate) cls = "degenerate";
  if (r.ill_conditioned) cls = "ill_conditioned";
  Record params = {{"weight", o.weight},
                   {"s_grid", o.s_grid},
                   {"illumination", o.illumination},
                   {"tol", o.tol},
                   {"limit", extended(r.limit)},
                   {"c_n", r.c_n},
                   {"beta", extended(r.fit.beta)},
                   {"rhs", extended(r.rhs)}};
  if (!r.warning.empty()) params["warning"] = r.warning;
  out.emit("surface-body", b.digest, std::move(params), r.scaled_limit, err, cls);
  return 0;
}

std::string lr_descriptor(int n, double r) {
  nlohmann::json d = {{"kind", "lr_ball"}, {"params", {{"r", r}, {"dim", n}}}};
  return d.dump();
}

std::string regime_name(LrOracleResult::Regime r) {
  switch (r) {
    case LrOracleResult::Regime::finite:
      return "finite";
    case LrOracleResult::Regime::plus_inf:
      return "plus_infinity";
    case LrOracleResult::Regime::minus_inf:
      return "minus_infinity";
  }
  return "finite";
}

int run_oracle(const Options& o, Emitter& out) {
  if (o.oracle_kind == "lr") {
    if (o.alpha_list.empty()) throw InvalidArgument("--alpha is required");
    const Dir dir = parse_dir(o.dir);
    const std::string digest = body_digest(lr_descriptor(o.n, o.r));
    for (const auto& t : o.alpha_list) {
      const double alpha = parse_real(t);
      out.start();
      const LrOracleResult v = lr_renyi_closed_form(o.n, o.r, alpha, dir);
      out.emit("oracle", digest,
               {{"kind", "lr"}, {"n", o.n}, {"r", o.r}, {"alpha", alpha}, {"dir", to_string(dir)}},
               v.value, 0.0, regime_name(v.regime));
    }
    return 0;
  }
  if (o.oracle_kind == "lr-volume") {
    out.start();
    const double v = lr_volume(o.n, o.r);
    out.emit("oracle", body_digest(lr_descriptor(o.n, o.r)), {{"kind", "lr-volume"}, {"n", o.n}, {"r", o.r}},
             v, 0.0, classify(v));
    return 0;
  }
  if (o.oracle_kind == "disk-law") {
    nlohmann::json d = {{"kind", "ball"}, {"params", {{"radius", o.rho}, {"dim", 2}}}};
    const std::string digest = body_digest(d.dump());
    out.start();
    const DiskSurfaceBodyLaw law = disk_surface_body_law(o.rho, o.s);
    out.emit("oracle", digest, {{"kind", "disk-law"}, {"quantity", "radius"}, {"rho", o.rho}, {"s", o.s}},
             law.radius, 0.0, classify(law.radius));
    out.emit("oracle", digest,
             {{"kind", "disk-law"}, {"quantity", "area_deficit"}, {"rho", o.rho}, {"s", o.s}},
             law.area_deficit, 0.0, classify(law.area_deficit));
    return 0;
  }
  throw InvalidArgument("unknown oracle kind '" + o.oracle_kind + "'");
}

int run_verify(const Options& o) {
  const std::vector<int> ids = suite_criteria(o.suite);
  bool all = true;
  std::printf("%-4s %-3s %-44s %12s\n", "", "id", "criterion", "residual/tol");
  for (int id : ids) {
    const CriterionResult r = run_criterion(id, o.seed);
    all = all && r.pass;
    std::printf("%-4s %-3d %-44s %12.3e", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.residual);
    if (o.timing) std::printf("  %.2f s", r.seconds);
    std::printf("\n");
    for (const auto& d : r.details) std::printf("           %s\n", d.c_str());
  }
  std::fflush(stdout);
  return all ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"L_p affine surface areas, cone-measure divergences and surface bodies"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "random seed (default 20100517)");
  app.add_flag("--timing", o.timing, "record wall times instead of 0");

  auto body = [&](CLI::App* sub, bool many) {
    auto* opt = sub->add_option("--body", o.bodies, "body descriptor file");
    if (!many) opt->expected(1);
  };
  auto p_opt = [&](CLI::App* sub) { sub->add_option("--p", o.p_list, "p values")->delimiter(','); };
  auto alpha_opt = [&](CLI::App* sub) {
    sub->add_option("--alpha", o.alpha_list, "orders")->delimiter(',');
    sub->add_option("--dir", o.dir, "PQ or QP");
  };

  auto* asp = app.add_subcommand("asp", "L_p affine surface area");
  body(asp, false);
  p_opt(asp);

  auto* ren = app.add_subcommand("renyi", "Rényi divergences of the cone measures");
  body(ren, false);
  alpha_opt(ren);

  auto* mix = app.add_subcommand("mixed", "mixed p-affine surface area and mixed divergences");
  body(mix, true);
  p_opt(mix);
  alpha_opt(mix);

  auto* om = app.add_subcommand("omega", "Omega and A invariants");
  body(om, false);
  p_opt(om);

  auto* sb = app.add_subcommand("surface-body", "surface-body limit quotient (n = 2)");
  body(sb, false);
  p_opt(sb);
  sb->add_option("--weight", o.weight, "const|const:<c>|fp:<p>|fqp|fpq|fpq-printed|mixed");
  sb->add_option("--mixed-body", o.mixed_bodies, "bodies for --weight mixed");
  sb->add_option("--s-grid", o.s_grid, "geometric grid s0:ratio:count");
  sb->add_option("--tol", o.tol, "relative quadrature tolerance of each deficit");
  sb->add_option("--plot-out", o.plot_out, "CSV of s, volume, quotient");
  sb->add_flag("--illumination", o.illumination, "illumination bodies instead of surface bodies");

  auto* orc = app.add_subcommand("oracle", "closed-form reference values");
  orc->add_option("--kind", o.oracle_kind, "lr|lr-volume|disk-law");
  orc->add_option("--n", o.n, "dimension");
  orc->add_option("--r", o.r, "l_r exponent");
  orc->add_option("--rho", o.rho, "disk radius");
  orc->add_option("--s", o.s, "cap arc length");
  alpha_opt(orc);

  auto* ver = app.add_subcommand("verify", "acceptance suite");
  ver->add_option("--suite", o.suite, "all|oracles|identities|surface|omega|<id>");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  Emitter out(o.timing);
  try {
    if (*asp) return run_asp(o, out);
    if (*ren) return run_renyi(o, out);
    if (*mix) return run_mixed(o, out);
    if (*om) return run_omega(o, out);
    if (*sb) return run_surface_body(o, out);
    if (*orc) return run_oracle(o, out);
    if (*ver) return run_verify(o);
  } catch (const NonConvergence& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
