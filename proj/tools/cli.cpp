#include "freegamma/cli.hpp"

#include "freegamma/convolution.hpp"
#include "freegamma/cumulants.hpp"
#include "freegamma/equilibrium.hpp"
#include "freegamma/finite_free.hpp"
#include "freegamma/gibbs.hpp"
#include "freegamma/measures.hpp"
#include "freegamma/report.hpp"
#include "freegamma/rmt.hpp"
#include "freegamma/suites.hpp"
#include "freegamma/transforms.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace fg::cli {

namespace {

/// Raised for malformed flag values that CLI11 itself accepts.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string t = "1";
  std::string theta = "1";
  std::string lambda = "1";
  bool triple_given = false;
  std::uint64_t seed = kDefaultSeed;
  std::string format;
  std::string output;
  std::optional<double> tol;
  int threads = 0;

  // subcommand specific
  int grid = 0;
  std::string which = "cauchy";
  std::optional<double> from;
  std::optional<double> to;
  std::optional<double> imag;
  unsigned order = 8;
  std::string suite = "all";
  std::size_t samples = 100000;
  bool no_probes = false;
  std::string identity;
  int dim = 1000;
  int seeds = 3;
  double ks_threshold = 0.07;
  std::string dims = "16,32,64,128";
};

struct Params {
  ExactGFGParams exact;
  GFGParams value;
};

Params triple(const RunConfig& c) {
  ExactGFGParams e;
  try {
    e = ExactGFGParams::make(parse_rational(c.t), parse_rational(c.theta), parse_rational(c.lambda));
  } catch (const Error& err) {
    fail(err.kind(), std::string("parameter domain: ") + err.what() + " (t=" + c.t + ", theta=" + c.theta +
                         ", lambda=" + c.lambda + ")");
  }
  return {e, e.to_double()};
}

std::string params_line(const Params& p) {
  return "t=" + to_string(p.exact.t) + " theta=" + to_string(p.exact.theta) + " lambda=" + to_string(p.exact.lambda);
}

std::string seed_line(std::uint64_t seed) { return std::to_string(seed); }

Table make_table(const std::string& params, std::uint64_t seed, std::vector<std::string> columns) {
  Table t;
  t.meta = {{"params", params}, {"seed", seed_line(seed)}, {"version", kVersion}};
  t.columns = std::move(columns);
  return t;
}

std::string render(const RunConfig& c, const std::string& command, const Table& table, Json extra = Json::object()) {
  if (c.format == "csv") return table.to_csv();
  Json payload = extra;
  payload["table"] = table.to_json();
  return envelope(command, payload).dump(2) + "\n";
}

std::string render_json(const std::string& command, const RunConfig& c, const std::string& params, Json payload) {
  Json meta{{"params", params}, {"seed", c.seed}};
  Json body{{"meta", meta}};
  for (auto& [k, v] : payload.items()) body[k] = v;
  return envelope(command, body).dump(2) + "\n";
}

double env_double(const char* name) {
  const char* v = std::getenv(name);
  if (!v) return NAN;
  char* end = nullptr;
  const double x = std::strtod(v, &end);
  if (end == v || *end != '\0' || !(x > 0.0)) throw UsageError(std::string(name) + " must be a positive number");
  return x;
}

// ---------------------------------------------------------------------------

struct Outcome {
  std::string text;
  bool ok = true;
};

Outcome cmd_density(const RunConfig& c) {
  const auto p = triple(c);
  const int n = c.grid > 0 ? c.grid : 200;
  if (n < 2) throw UsageError("--grid needs at least 2 points");
  const auto s = support(p.value);
  auto table = make_table(params_line(p), c.seed, {"x", "density"});
  const double atom = atom_mass(p.value);
  table.meta.push_back({"atom", "x=0 mass=" + format_number(atom)});
  for (int i = 0; i < n; ++i) {
    const double x = s.lo + s.width() * i / (n - 1.0);
    table.add_row({format_number(x), format_number(gfg_density(p.value, x))});
  }
  return {render(c, "density", table, Json{{"atom", Json{{"x", 0}, {"mass", atom}}}})};
}

Outcome cmd_transform(const RunConfig& c) {
  const auto p = triple(c);
  const int n = c.grid > 0 ? c.grid : 50;
  if (n < 2) throw UsageError("--grid needs at least 2 points");
  auto table = make_table(params_line(p), c.seed, {"re_z", "im_z", "re_value", "im_value"});
  table.meta.push_back({"transform", c.which});
  auto sweep = [&](double lo, double hi, const std::function<Complex(double)>& point, const std::function<Complex(Complex)>& f) {
    if (!(lo < hi)) throw UsageError("--from must be below --to");
    for (int i = 0; i < n; ++i) {
      const Complex z = point(i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1.0));
      const Complex v = f(z);
      table.add_row({format_number(z.real()), format_number(z.imag()), format_number(v.real()), format_number(v.imag())});
    }
  };
  if (c.which == "cauchy") {
    const auto s = support(p.value);
    const double y = c.imag.value_or(0.01);
    sweep(c.from.value_or(s.lo - 0.25 * s.width()), c.to.value_or(s.hi + 0.25 * s.width()),
          [y](double x) { return Complex(x, y); }, [&](Complex z) { return cauchy_transform(p.value, z); });
  } else if (c.which == "r") {
    const double y = c.imag.value_or(0.0);
    sweep(c.from.value_or(-0.5), c.to.value_or(0.0), [y](double x) { return Complex(x, y); },
          [&](Complex z) { return r_transform(rfam::Gfg{p.value}, z); });
  } else {
    if (c.imag && *c.imag != 0.0) throw UsageError("the S-transform is evaluated on real points only");
    const SFamily fam = sfam::Gfg{p.value};
    const double lower = s_domain_lower(fam);
    sweep(c.from.value_or(lower + 1e-3 * std::abs(lower)), c.to.value_or(0.0), [](double x) { return Complex(x, 0.0); },
          [&](Complex z) { return Complex(s_transform(fam, z.real()), 0.0); });
  }
  return {render(c, "transform", table)};
}

Outcome cmd_moments(const RunConfig& c) {
  const auto p = triple(c);
  if (c.order < 1) throw UsageError("--n must be at least 1");
  const auto m = moments<Rational>(p.exact.t, p.exact.theta, p.exact.lambda, c.order);
  const auto k = free_cumulants<Rational>(p.exact.t, p.exact.theta, p.exact.lambda, c.order);
  auto table = make_table(params_line(p), c.seed, {"n", "moment", "free_cumulant", "moment_decimal"});
  for (unsigned i = 0; i < c.order; ++i)
    table.add_row({std::to_string(i + 1), to_string(m[i]), to_string(k[i]), format_number(to_double(m[i]))});
  return {render(c, "moments", table)};
}

// ---------------------------------------------------------------------------
// verify

struct SuiteResult {
  Json checks = Json::array();
  Table table;
  bool pass = true;

  void add(const std::string& suite, const std::string& check, const std::string& params, double value, double threshold,
           const std::string& status, Json detail) {
    if (status == "fail") pass = false;
    table.add_row({suite, check, params, format_number(value), format_number(threshold), status});
    detail["suite"] = suite;
    detail["check"] = check;
    detail["status"] = status;
    checks.push_back(std::move(detail));
  }
};

std::string status_of(bool ok) { return ok ? "pass" : "fail"; }

void suite_free(const std::optional<Params>& p, double tol, SuiteResult& r) {
  for (IdentityId id : kIdentityCatalog) {
    std::vector<IdentityParams> sets = default_parameter_sets(id);
    if (p && identity_reads_gfg(id)) {
      IdentityParams ip = sets.front();
      ip.gfg = p->value;
      sets = {ip};
    }
    for (const auto& ip : sets) {
      const std::string name(identity_name(id));
      try {
        const auto rep = verify_identity(id, ip, tol, ExecutionPolicy::parallel);
        r.add("free", name, ip.describe(id), rep.max_abs_deviation, tol, status_of(rep.pass), to_json(rep));
      } catch (const Error& e) {
        const bool inapplicable = e.kind() == ErrorKind::Domain || e.kind() == ErrorKind::InvalidParameters;
        if (!inapplicable) throw;
        r.add("free", name, ip.describe(id), NAN, tol, "skipped", Json{{"reason", e.what()}});
      }
    }
  }
}

void suite_classical(const RunConfig& c, const std::optional<Params>& p, SuiteResult& r) {
  std::vector<GFGParams> sets;
  if (p) sets = {p->value};
  else sets = {GFGParams::make(1, 1, 2), GFGParams::make(2, 1, 1.5)};
  const RngStream root{c.seed, 0};
  std::uint64_t stream = 0;
  for (const auto& g : sets) {
    const auto gc = gibbs_check(g);
    r.add("classical", "PARTITION_FUNCTION", g.describe(), gc.z_relative_error, gc.z_tolerance,
          status_of(gc.z_relative_error <= gc.z_tolerance),
          Json{{"params", to_json(g)}, {"z", gc.z}, {"z_quadrature", gc.z_quadrature}});
    r.add("classical", "PEARSON", g.describe(), gc.pearson_max, gc.pearson_tolerance,
          status_of(gc.pearson_max <= gc.pearson_tolerance), Json{{"params", to_json(g)}, {"points", 100}});
    for (auto id : {ClassicalIdentityId::RhoMultA, ClassicalIdentityId::RhoMultB, ClassicalIdentityId::RhoMe}) {
      const std::string name(classical_identity_name(id));
      const auto rng = root.substream(stream++);
      try {
        const auto rep = verify_classical_identity(id, g, c.samples, rng, ExecutionPolicy::parallel);
        r.add("classical", name, rep.params.describe(), rep.ks, rep.threshold, status_of(rep.pass), to_json(rep));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Domain) throw;
        r.add("classical", name, g.describe(), NAN, NAN, "skipped", Json{{"reason", e.what()}});
      }
    }
  }
}

Json to_json(const EquilibriumCheck& e) {
  Json out{{"params", fg::to_json(e.params)},
           {"el_residual_max", e.el_residual_max},
           {"endpoints", fg::to_json(e.endpoints)},
           {"potential_sigma", e.potential_sigma},
           {"pass", e.pass}};
  if (e.maximality) out["maximality"] = fg::to_json(*e.maximality);
  return out;
}

void suite_entropy(const RunConfig& c, const std::optional<Params>& p, SuiteResult& r) {
  const GFGParams g = p ? p->value : GFGParams::make(1, 1, 1);
  if (!(g.theta * (g.lambda - 1.0) < g.t)) {
    r.add("entropy", "EQUILIBRIUM", g.describe(), NAN, NAN, "skipped",
          Json{{"reason", "the potential confines only for lambda < 1 + t/theta"}});
    return;
  }
  const auto e = equilibrium_check(g, !c.no_probes);
  const std::string d = g.describe();
  r.add("entropy", "EL_RESIDUAL", d, e.el_residual_max, 1e-10, status_of(e.el_residual_max <= 1e-10), Json::object());
  const double end_gap = std::max(std::abs(e.endpoints.eq0), std::abs(e.endpoints.eq2 - 2.0));
  r.add("entropy", "ENDPOINTS", d, end_gap, 1e-8, status_of(end_gap <= 1e-8), fg::to_json(e.endpoints));
  r.add("entropy", "POTENTIAL_SPREAD", d, e.potential_sigma, 1e-4, status_of(e.potential_sigma < 1e-4), Json::object());
  if (e.maximality) {
    double worst = INFINITY;
    for (const auto& probe : e.maximality->probes) worst = std::min(worst, probe.gap);
    r.add("entropy", "MAXIMALITY", d, worst, e.maximality->margin, status_of(e.maximality->pass), fg::to_json(*e.maximality));
  }
}

Outcome cmd_verify(const RunConfig& c) {
  const std::optional<Params> p = c.triple_given ? std::optional<Params>(triple(c)) : std::nullopt;
  const double tol = c.tol.value_or(1e-10);
  SuiteResult r;
  r.table = make_table(p ? params_line(*p) : "default sets", c.seed, {"suite", "check", "params", "value", "threshold", "status"});
  if (c.suite == "free" || c.suite == "all") suite_free(p, tol, r);
  if (c.suite == "classical" || c.suite == "all") suite_classical(c, p, r);
  if (c.suite == "entropy" || c.suite == "all") suite_entropy(c, p, r);
  r.table.meta.push_back({"pass", r.pass ? "true" : "false"});
  if (c.format == "csv") return {r.table.to_csv(), r.pass};
  return {render_json("verify", c, r.table.meta.front().second, Json{{"suite", c.suite}, {"checks", r.checks}, {"pass", r.pass}}),
          r.pass};
}

// ---------------------------------------------------------------------------

Outcome cmd_rmt(const RunConfig& c) {
  const auto id = parse_identity(c.identity);
  if (!id) throw UsageError("unknown identity '" + c.identity + "'");
  if (c.dim < 2) throw UsageError("--dim must be at least 2");
  if (c.seeds < 1) throw UsageError("--seeds must be at least 1");
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < c.seeds; ++i) seeds.push_back(c.seed + static_cast<std::uint64_t>(i));
  const auto v = verify_rmt(*id, c.dim, seeds, c.ks_threshold, ExecutionPolicy::parallel);
  auto table = make_table(std::string(identity_name(*id)) + " dim=" + std::to_string(c.dim), c.seed,
                          {"seed", "ks", "w1", "atom_fraction"});
  for (std::size_t i = 0; i < v.seeds.size(); ++i)
    table.add_row({std::to_string(v.seeds[i]), format_number(v.comparisons[i].ks), format_number(v.comparisons[i].w1),
                   i < v.atom_fractions.size() ? format_number(v.atom_fractions[i]) : ""});
  table.meta.push_back({"pass", v.pass ? "true" : "false"});
  if (c.format == "csv") return {table.to_csv(), v.pass};
  return {render_json("rmt", c, table.meta.front().second, to_json(v)), v.pass};
}

Outcome cmd_gibbs(const RunConfig& c) {
  const auto p = triple(c);
  const int n = c.grid > 0 ? c.grid : 100;
  const auto gc = gibbs_check(p.value, n);
  auto table = make_table(params_line(p), c.seed, {"x", "density", "pearson_residual"});
  table.meta.push_back({"z", format_number(gc.z)});
  table.meta.push_back({"z_quadrature", format_number(gc.z_quadrature)});
  table.meta.push_back({"pearson_max", format_number(gc.pearson_max)});
  for (double x : gibbs_grid(p.value, n))
    table.add_row({format_number(x), format_number(gibbs_density(p.value, x)), format_number(pearson_residual(p.value, x))});
  return {render(c, "gibbs", table,
                 Json{{"z", gc.z}, {"z_quadrature", gc.z_quadrature}, {"pearson_max", gc.pearson_max}})};
}

Outcome cmd_entropy(const RunConfig& c) {
  const auto p = triple(c);
  const auto value = free_entropy(p.value, gfg_measure(p.value));
  const auto e = equilibrium_check(p.value, !c.no_probes);
  auto table = make_table(params_line(p), c.seed, {"family", "magnitude", "entropy", "gap", "below"});
  table.meta.push_back({"entropy", format_number(value.total)});
  table.meta.push_back({"el_residual_max", format_number(e.el_residual_max)});
  table.meta.push_back({"potential_sigma", format_number(e.potential_sigma)});
  if (e.maximality)
    for (const auto& probe : e.maximality->probes)
      table.add_row({std::string(perturbation_name(probe.family)), format_number(probe.magnitude),
                     format_number(probe.entropy.total), format_number(probe.gap), probe.below ? "true" : "false"});
  table.meta.push_back({"pass", e.pass ? "true" : "false"});
  if (c.format == "csv") return {table.to_csv(), e.pass};
  return {render_json("entropy", c, params_line(p), Json{{"entropy", fg::to_json(value)}, {"check", to_json(e)}}), e.pass};
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int d = 0;
    try {
      d = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError("--dims expects a comma-separated list of integers");
    }
    if (used != item.size() || d < 1) throw UsageError("--dims entries must be positive integers");
    if (!dims.empty() && d <= dims.back()) throw UsageError("--dims must be strictly increasing");
    dims.push_back(d);
  }
  if (dims.empty()) throw UsageError("--dims is empty");
  return dims;
}

Outcome cmd_finite_free(const RunConfig& c) {
  const auto p = triple(c);
  const auto dims = parse_dims(c.dims);
  const auto study = convergence_study(p.value, dims, ExecutionPolicy::parallel);
  const double s_half = s_transform(sfam::Gfg{p.value}, -0.5);
  auto table = make_table(params_line(p), c.seed, {"d", "w1", "ks", "residual_max", "s_ratio_half"});
  table.meta.push_back({"s_half", format_number(s_half)});
  table.meta.push_back({"w1_decreasing", study.w1_decreasing ? "true" : "false"});
  for (const auto& row : study.rows) {
    const std::string ratio = row.d % 2 == 0 ? format_number(finite_s_ratio(build_p_d(p.exact, row.d), row.d / 2)) : "";
    table.add_row({std::to_string(row.d), format_number(row.w1), format_number(row.ks), format_number(row.residual_max), ratio});
  }
  return {render(c, "finite-free", table, Json{{"study", to_json(study)}, {"s_half", s_half}})};
}

// ---------------------------------------------------------------------------

void emit_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
  Json e{{"schema", kSchemaVersion}, {"error", Json{{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  err << e.dump() << "\n";
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameters:
    case ErrorKind::Domain:
    case ErrorKind::BranchDomain:
    case ErrorKind::NotUnimodal:
    case ErrorKind::Pole:
    case ErrorKind::ZeroCoefficient:
      return 2;
    default:
      return 1;
  }
}

void add_triple(CLI::App* app, RunConfig& c) {
  app->add_option("--t", c.t, "t > 0 (decimal or p/q)");
  app->add_option("--theta", c.theta, "theta > 0 (decimal or p/q)");
  app->add_option("--lambda", c.lambda, "lambda >= 1 (decimal or p/q)");
}

void add_common(CLI::App* app, RunConfig& c, const char* default_format) {
  app->add_option("--seed", c.seed, "random seed (default 0xC0FFEE)");
  app->add_option("--format", c.format, std::string("output format (default ") + default_format + ")")
      ->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--output,-o", c.output, "write the result to this file");
  app->add_option("--tol", c.tol, "tolerance override (also FREEGAMMA_TOL)")->check(CLI::PositiveNumber);
  app->add_option("--threads", c.threads, "thread count (also FREEGAMMA_THREADS)")->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Generalized free gamma laws: evaluation, verification and simulation"};
  app.name(args.empty() ? "freegamma" : args.front());
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  struct Sub {
    CLI::App* app;
    const char* format;
    Outcome (*fn)(const RunConfig&);
  };
  std::vector<Sub> subs;
  auto sub = [&](const char* name, const char* help, const char* format, Outcome (*fn)(const RunConfig&)) {
    CLI::App* s = app.add_subcommand(name, help);
    add_triple(s, c);
    add_common(s, c, format);
    subs.push_back({s, format, fn});
    return s;
  };

  sub("density", "density of mu on a grid over its support", "csv", cmd_density)
      ->add_option("--grid", c.grid, "number of grid points (default 200)");
  auto* tr = sub("transform", "Cauchy, R- or S-transform on a grid", "csv", cmd_transform);
  tr->add_option("--which", c.which, "cauchy, r or s")->check(CLI::IsMember({"cauchy", "r", "s"}));
  tr->add_option("--grid", c.grid, "number of grid points (default 50)");
  tr->add_option("--from", c.from, "left end of the real sweep");
  tr->add_option("--to", c.to, "right end of the real sweep");
  tr->add_option("--imag", c.imag, "imaginary part of the sweep");
  sub("moments", "exact moments and free cumulants", "csv", cmd_moments)
      ->add_option("--n", c.order, "highest order (default 8)")->check(CLI::Range(1u, 64u));
  auto* ve = sub("verify", "verification suites", "json", cmd_verify);
  ve->add_option("--suite", c.suite, "free, classical, entropy or all")
      ->check(CLI::IsMember({"free", "classical", "entropy", "all"}));
  ve->add_option("--samples", c.samples, "Monte Carlo sample size (default 100000)");
  ve->add_flag("--no-probes", c.no_probes, "skip the maximality perturbations");
  auto* rm = sub("rmt", "random matrix check of a catalog identity", "json", cmd_rmt);
  rm->add_option("--identity", c.identity, "catalog identity id")->required();
  rm->add_option("--dim", c.dim, "matrix dimension (default 1000)");
  rm->add_option("--seeds", c.seeds, "number of seeds, starting at --seed (default 3)");
  rm->add_option("--ks-threshold", c.ks_threshold, "KS threshold (default 0.07)");
  sub("gibbs", "partition function, Gibbs density and Pearson residual", "csv", cmd_gibbs)
      ->add_option("--grid", c.grid, "number of grid points (default 100)");
  sub("entropy", "free entropy, equilibrium checks and maximality probes", "json", cmd_entropy)
      ->add_flag("--no-probes", c.no_probes, "skip the maximality perturbations");
  sub("finite-free", "root distributions of the finite-degree polynomials", "csv", cmd_finite_free)
      ->add_option("--dims", c.dims, "comma-separated increasing degrees (default 16,32,64,128)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    emit_error(err, "invalid-flags", e.what(), 2);
    return 2;
  }

  try {
    const double env_tol = env_double("FREEGAMMA_TOL");
    if (!c.tol && std::isfinite(env_tol)) c.tol = env_tol;
    const double env_threads = env_double("FREEGAMMA_THREADS");
    if (c.threads == 0 && std::isfinite(env_threads)) c.threads = static_cast<int>(env_threads);
    if (c.threads > 0) set_thread_count(c.threads);

    for (const auto& s : subs) {
      if (!s.app->parsed()) continue;
      if (c.format.empty()) c.format = s.format;
      c.triple_given = s.app->count("--t") + s.app->count("--theta") + s.app->count("--lambda") > 0;
      const Outcome o = s.fn(c);
      if (c.output.empty()) {
        out << o.text;
      } else {
        std::ofstream f(c.output, std::ios::binary);
        f << o.text;
        if (!f) {
          emit_error(err, "io", "cannot write '" + c.output + "'", 1);
          return 1;
        }
      }
      if (!o.ok) {
        emit_error(err, "verification-failure", std::string(s.app->get_name()) + " reported a failing check", 1);
        return 1;
      }
      return 0;
    }
  } catch (const UsageError& e) {
    emit_error(err, "invalid-flags", e.what(), 2);
    return 2;
  } catch (const Error& e) {
    const int code = exit_code_for(e.kind());
    emit_error(err, std::string(to_string(e.kind())), e.what(), code);
    return code;
  }
  return 2;
}

}  // namespace fg::cli
