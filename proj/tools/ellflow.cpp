#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ellflow/error.hpp"
#include "ellflow/profiles.hpp"
#include "ellflow/suites.hpp"
#include "ellflow/verifier.hpp"
#include "ellflow/weierstrass.hpp"
#include "ellflow/zeros.hpp"

using namespace ellflow;
using nlohmann::json;

namespace {

struct Options {
  double g2 = 4.0 / 3.0, g3 = 1.0;
  std::string family = "1";
  std::string C = "0.726483157256779,0.726483157256779,0.726483157256779";
  double k0 = 1.0;
  double e0 = NAN;
  double kappa = 5.0;
  std::string grid = "0:0.2:5,-0.1:0.1:5";
  std::string center = "0,0,0";
  std::string out;
  std::string method = "both";
  std::string suite = "all";
  std::string convention = "integral";
  std::string branch = "signed";
  bool strict_domain = false;
  double fd_step = 1e-3;
  double max_skipped = 0.01;
  double lo = 0.01, hi = NAN, shift = 1.0 / 3.0;
  int n = 1000;
  unsigned threads = 0;
  std::uint64_t seed = 0x5eed2024;
  int points = 1000;
};

json cjson(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::InvalidArgument, msg); }

double finite(double v, const char* name) {
  if (!std::isfinite(v)) bad(std::string(name) + " must be finite");
  return v;
}

std::vector<double> parse_list(const std::string& s, char sep, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    double v = 0.0;
    const char* b = item.data();
    const char* e = b + item.size();
    while (b < e && *b == ' ') ++b;
    auto [p, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || p != e) bad(std::string("cannot parse ") + what + " '" + s + "'");
    out.push_back(v);
  }
  return out;
}

struct EvalGrid {
  double t0, t1;
  int nt;
  double lo, hi;
  int nx;
  Vec3 center;
  double t_at(int i) const { return nt == 1 ? t0 : t0 + (t1 - t0) * i / (nt - 1); }
  double x_at(int i) const { return nx == 1 ? lo : lo + (hi - lo) * i / (nx - 1); }
};

// t0:t1:nt,lo:hi:nx with the spatial box centred on `center`
EvalGrid parse_grid(const std::string& s, const std::string& center) {
  auto comma = s.find(',');
  if (comma == std::string::npos) bad("grid must be t0:t1:nt,lo:hi:nx");
  auto t = parse_list(s.substr(0, comma), ':', "grid");
  auto x = parse_list(s.substr(comma + 1), ':', "grid");
  auto c = parse_list(center, ',', "center");
  if (t.size() != 3 || x.size() != 3 || c.size() != 3) bad("grid must be t0:t1:nt,lo:hi:nx and center x,y,z");
  for (double v : t) finite(v, "grid");
  for (double v : x) finite(v, "grid");
  for (double v : c) finite(v, "center");
  if (t[2] < 1 || x[2] < 1 || t[2] != std::floor(t[2]) || x[2] != std::floor(x[2])) bad("grid counts must be positive integers");
  if (t[1] < t[0] || x[1] < x[0]) bad("grid bounds must be ordered");
  if (t[2] * x[2] * x[2] * x[2] > 2e8) bad("grid too large");
  return {t[0], t[1], int(t[2]), x[0], x[1], int(x[2]), {c[0], c[1], c[2]}};
}

Rank3Config rank3_config(const Options& o) {
  Rank3Config cfg;
  cfg.family = parse_family(o.family);
  auto C = parse_list(o.C, ',', "C");
  if (C.size() != 3) bad("--C needs three comma-separated values");
  for (int i = 0; i < 3; ++i) cfg.C[i] = finite(C[i], "C");
  cfg.k0 = finite(o.k0, "k0");
  cfg.e0 = o.e0;
  if (!(o.kappa > 0.0) || !std::isfinite(o.kappa)) bad("kappa must be positive");
  cfg.med = MediumParams::from_kappa(o.kappa);
  cfg.triad = make_entropic_triad(cfg.med);
  if (o.convention == "integral") cfg.convention = G3Convention::Integral;
  else if (o.convention == "table") cfg.convention = G3Convention::Table;
  else bad("convention must be integral or table");
  if (o.branch == "signed") cfg.branch = RootBranch::Signed;
  else if (o.branch == "positive") cfg.branch = RootBranch::Positive;
  else bad("branch must be signed or positive");
  return cfg;
}

Invariants invariants(const Options& o) { return {finite(o.g2, "g2"), finite(o.g3, "g3")}; }

int cmd_periods(const Options& o) {
  Invariants inv = invariants(o);
  Lattice lat = periods_from_invariants(inv);
  CubicRoots r = cubic_roots(inv);
  json j{{"command", "periods"},
         {"g2", inv.g2},
         {"g3", inv.g3},
         {"omega1", cjson(lat.omega1)},
         {"omega2", cjson(lat.omega2)},
         {"tau", cjson(lat.tau)},
         {"roots", {cjson(r.e1), cjson(r.e2), cjson(r.e3)}},
         {"discriminant", inv.discriminant()}};
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_zeros(const Options& o) {
  if (o.method != "hypergeometric" && o.method != "newton" && o.method != "both")
    bad("method must be hypergeometric, newton or both");
  Invariants inv = invariants(o);
  WeierstrassP p(inv);
  const Lattice& lat = p.lattice();
  json j{{"command", "zeros"}, {"g2", inv.g2}, {"g3", inv.g3}, {"omega1", cjson(lat.omega1)}, {"omega2", cjson(lat.omega2)}};
  auto record = [&](Complex z) {
    return json{{"z0", cjson(z)},
                {"minus_z0", cjson(-z)},
                {"conjugate", cjson(std::conj(z))},
                {"wp_residual", std::abs(p.value(z))}};
  };
  std::optional<Complex> zh, zn;
  if (o.method != "newton") {
    ZeroPair zp = wp_zero_hypergeometric(lat.tau, o.strict_domain ? FormulaDomain::Strict : FormulaDomain::Continued);
    zh = canonical_zero(lat.omega1 * zp.z0, lat.omega1, lat.omega2);
    json h = record(*zh);
    h["s"] = cjson(zp.s);
    h["inside_disk"] = zp.inside_disk;
    h["z0_tau_normalized"] = cjson(zp.z0);
    j["hypergeometric"] = h;
  }
  if (o.method != "hypergeometric") {
    zn = canonical_zero(wp_zero_newton(inv), lat.omega1, lat.omega2);
    j["newton"] = record(*zn);
  }
  if (zh && zn)
    j["disagreement"] = std::min(std::abs(p.reduce(*zh - *zn)), std::abs(p.reduce(*zh + *zn)));
  std::cout << j.dump() << "\n";
  return 0;
}

void put(std::string& line, double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  line.append(buf, ec == std::errc() ? p : buf);
  line.push_back(',');
}

template <class F>
void parallel_for(long n, unsigned threads, F&& f) {
  unsigned nt = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<long> next{0};
  auto work = [&] {
    for (long i; (i = next.fetch_add(1)) < n;) f(i);
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < nt; ++k) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
}

int cmd_eval(const Options& o) {
  Rank3Config cfg = rank3_config(o);
  EvalGrid g = parse_grid(o.grid, o.center);
  Rank3Solution sol(cfg);
  const long nx3 = long(g.nx) * g.nx * g.nx, total = nx3 * g.nt;

  struct Row {
    double t;
    Vec3 x;
    Rank3Point p;
    std::string status;
  };
  std::vector<Row> rows(total);
  parallel_for(total, o.threads, [&](long k) {
    Row& row = rows[k];
    long s = k % nx3;
    row.t = g.t_at(int(k / nx3));
    row.x = {g.center[0] + g.x_at(int(s / (g.nx * g.nx))), g.center[1] + g.x_at(int(s / g.nx % g.nx)),
             g.center[2] + g.x_at(int(s % g.nx))};
    try {
      row.p = sol.eval(row.t, row.x);
      bool ok = std::isfinite(row.p.state.a) && std::isfinite(norm(row.p.state.u));
      row.status = ok ? "ok" : std::string(to_string(ErrorKind::EvaluationFailure));
    } catch (const Error& e) {
      row.status = std::string(to_string(e.kind()));
      row.p.state.a = NAN;
      row.p.state.u = {NAN, NAN, NAN};
      row.p.r = {NAN, NAN, NAN};
    }
  });

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary | std::ios::trunc);
    if (!file) bad("cannot open output file '" + o.out + "'");
  }
  std::ostream& os = o.out.empty() ? std::cout : file;
  os << "t,x1,x2,x3,r1,r2,r3,a,u1,u2,u3,status\n";
  long failed = 0;
  double max_a = 0.0, max_u = 0.0;
  std::string line;
  for (const Row& row : rows) {
    line.clear();
    put(line, row.t);
    for (double v : row.x) put(line, v);
    for (double v : row.p.r) put(line, v);
    put(line, row.p.state.a);
    for (double v : row.p.state.u) put(line, v);
    line += row.status;
    line.push_back('\n');
    os << line;
    if (row.status != "ok") {
      ++failed;
      continue;
    }
    max_a = std::max(max_a, std::abs(row.p.state.a));
    max_u = std::max(max_u, norm(row.p.state.u));
  }
  os.flush();
  if (!o.out.empty()) {
    json j{{"command", "eval"},  {"rows", total},      {"failed", failed},
           {"max_abs_a", max_a}, {"max_norm_u", max_u}, {"out", o.out}};
    std::cout << j.dump() << "\n";
  }
  return double(failed) > 0.01 * double(total) ? 3 : 0;
}

int cmd_residual(const Options& o) {
  Rank3Config cfg = rank3_config(o);
  EvalGrid eg = parse_grid(o.grid, o.center);
  if (!(o.fd_step > 0.0)) bad("fd-step must be positive");
  GridSpec g;
  g.t0 = eg.t0;
  g.t1 = eg.t1;
  g.n_t = eg.nt;
  g.n_x = eg.nx;
  g.x_lo = {eg.center[0] + eg.lo, eg.center[1] + eg.lo, eg.center[2] + eg.lo};
  g.x_hi = {eg.center[0] + eg.hi, eg.center[1] + eg.hi, eg.center[2] + eg.hi};
  g.fd_step = o.fd_step;
  g.validate();
  Rank3Solution sol(cfg);
  ResidualReport r = pde_residual([&](double t, const Vec3& x) { return sol.eval(t, x).state; }, cfg.med, g, o.threads);
  json skipped = json::array();
  for (const auto& p : r.skipped_points) skipped.push_back({p[0], p[1], p[2], p[3]});
  bool ok = r.skipped_fraction() <= o.max_skipped;
  json j{{"command", "residual"},
         {"fd_step", g.fd_step},
         {"max_abs", r.max_abs},
         {"l2", r.l2},
         {"max_per_equation", r.max_per_equation},
         {"worst_point", r.worst_point},
         {"samples", r.samples},
         {"samples_skipped", r.samples_skipped},
         {"skipped_points", skipped},
         {"acceptable", ok}};
  std::cout << j.dump() << "\n";
  return ok ? 0 : 1;
}

int cmd_scan(const Options& o, bool profile_given) {
  if (o.n < 1000) bad("scan needs n >= 1000");
  std::function<double(double)> f;
  std::string target;
  double hi = o.hi;
  std::shared_ptr<Table3Profile> prof;
  std::shared_ptr<WeierstrassP> p;
  if (profile_given) {
    Rank3Config cfg = rank3_config(o);
    prof = std::make_shared<Table3Profile>(cfg.family, cfg.C[0], cfg.k0, cfg.e0, cfg.convention, cfg.branch);
    f = [prof](double r) { return prof->value(r); };
    target = "profile";
    if (std::isnan(hi)) hi = prof->wp().lattice().omega1.real() - 0.01;
  } else {
    p = std::make_shared<WeierstrassP>(invariants(o));
    double shift = finite(o.shift, "shift");
    f = [p, shift](double r) { return p->value(Complex(r, 0.0)).real() + shift; };
    target = "wp_plus_shift";
    if (std::isnan(hi)) hi = p->lattice().omega1.real() - 0.01;
  }
  finite(o.lo, "lo");
  if (!(hi > o.lo)) bad("scan interval must have hi > lo");
  BoundednessReport b = boundedness_scan(f, o.lo, hi, o.n);
  json j{{"command", "scan"}, {"target", target},       {"lo", o.lo},           {"hi", hi},
         {"n", o.n},          {"min", b.min_val},       {"max", b.max_val},     {"argmin", b.argmin},
         {"bounded", b.bounded}, {"poles", b.poles}};
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_verify(const Options& o) {
  SuiteOptions so;
  so.seed = o.seed;
  so.points = o.points;
  if (o.points < 1) bad("points must be positive");
  SuiteReport rep = run_suite(o.suite, so);
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json cj{{"name", c.name}, {"passed", c.passed}, {"value", std::isfinite(c.value) ? json(c.value) : json(nullptr)},
            {"tolerance", c.tolerance}};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  json j{{"command", "verify"}, {"suite", rep.suite}, {"passed", rep.passed()}, {"checks", checks}};
  if (const CheckResult* f = rep.first_failure()) {
    j["first_failure"] = f->name;
    std::cerr << "verification failed: " << f->name << "\n";
  }
  std::cout << j.dump() << "\n";
  return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact elliptic flows of the isentropic ideal fluid: periods, zeros, evaluation and checks"};
  app.set_config("--config", "", "flat key = value file; command-line flags override it");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;

  app.add_option("--g2", o.g2, "invariant g2")->capture_default_str();
  app.add_option("--g3", o.g3, "invariant g3")->capture_default_str();
  auto* fam = app.add_option("--family", o.family, "profile family: 1, 2a, 2b, 2c, 3")->capture_default_str();
  app.add_option("--C", o.C, "constants C1,C2,C3")->capture_default_str();
  app.add_option("--k0", o.k0, "k0")->capture_default_str();
  app.add_option("--e0", o.e0, "e0 (family 2c; default 1/(12 k0^2))");
  app.add_option("--kappa", o.kappa, "kappa = 2/(gamma - 1)")->capture_default_str();
  app.add_option("--grid", o.grid, "t0:t1:nt,lo:hi:nx")->capture_default_str();
  app.add_option("--center", o.center, "centre x,y,z of the spatial box")->capture_default_str();
  app.add_option("--out", o.out, "output path");
  app.add_option("--method", o.method, "hypergeometric, newton or both")->capture_default_str();
  app.add_option("--suite", o.suite, "kernel, modular, flow, table3 or all")->capture_default_str();
  app.add_option("--convention", o.convention, "row-1 constant convention: integral or table")->capture_default_str();
  app.add_option("--branch", o.branch, "square root branch: signed or positive")->capture_default_str();
  app.add_flag("--strict-domain", o.strict_domain, "refuse the zero formula outside |s| < 1, |1 - s| < 1");
  app.add_option("--fd-step", o.fd_step, "finite-difference step")->capture_default_str();
  app.add_option("--max-skipped", o.max_skipped, "largest acceptable skipped fraction")->capture_default_str();
  app.add_option("--lo", o.lo, "scan lower end")->capture_default_str();
  app.add_option("--hi", o.hi, "scan upper end (default omega1 - 0.01)");
  app.add_option("--shift", o.shift, "scan target p(r) + shift")->capture_default_str();
  app.add_option("--n", o.n, "scan samples")->capture_default_str();
  app.add_option("--threads", o.threads, "worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--seed", o.seed, "verify suite seed")->capture_default_str();
  app.add_option("--points", o.points, "verify samples per set")->capture_default_str();

  auto* periods = app.add_subcommand("periods", "lattice periods, tau and cubic roots");
  auto* zeros = app.add_subcommand("zeros", "zeros of p by the modular formula and by Newton");
  auto* eval = app.add_subcommand("eval", "evaluate the rank-3 flow on a grid as CSV");
  auto* residual = app.add_subcommand("residual", "PDE residual of the rank-3 flow on a grid");
  auto* scan = app.add_subcommand("scan", "extrema of p + shift or of a profile on a real interval");
  auto* verify = app.add_subcommand("verify", "run a verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_code(ErrorKind::InvalidArgument);
  }

  try {
    if (*periods) return cmd_periods(o);
    if (*zeros) return cmd_zeros(o);
    if (*eval) return cmd_eval(o);
    if (*residual) return cmd_residual(o);
    if (*scan) return cmd_scan(o, fam->count() > 0);
    if (*verify) return cmd_verify(o);
  } catch (const Error& e) {
    std::cerr << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 99;
  }
  return 0;
}
