#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "pslab/diophantine.hpp"
#include "pslab/errors.hpp"
#include "pslab/experiment.hpp"
#include "pslab/expsums.hpp"
#include "pslab/parallel.hpp"
#include "pslab/phase.hpp"
#include "pslab/primes.hpp"
#include "pslab/rational.hpp"
#include "pslab/vaughan.hpp"
#include "report.hpp"

#ifndef PSLAB_VERSION
#define PSLAB_VERSION "unknown"
#endif

namespace pslab::cli {

namespace {

// beta is a decimal literal held at this precision; experiment code widens
// it as needed.
constexpr int kBetaBits = 256;

struct Common {
  std::string format = "csv";
  std::string output;
  int workers = 0;
};

struct Theory {
  std::string alpha;
  std::string beta = "0";
  std::string gamma;
  double C = 1.0;
  double eps = 0.0;
  std::vector<std::int64_t> conv_q;
  std::vector<std::int64_t> conv_index;
};

struct PsOpts {
  std::string gamma;
  std::uint64_t limit = 0;
  bool list = false;
  bool skip_ambiguous = false;
};

struct ExpsumOpts {
  std::string kind;
  std::string alpha;
  std::string beta = "0";
  std::string gamma;
  std::vector<std::int64_t> h{1};
  std::vector<std::uint64_t> n;
  std::optional<std::int64_t> conv_q;
  std::optional<std::int64_t> conv_index;
  double delta = 0.0;
  std::optional<std::uint64_t> H;
};

struct VaughanOpts {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  std::uint64_t theta = 0;
  std::string phase = "zero";
  std::string sigma = "0.000001";
  int degree = 3;
  std::string alpha = "sqrt:2";
  std::int64_t h = 1;
  std::int64_t m = 1;
  std::string gamma = "19/20";
};

struct AuditOpts {
  std::string alpha;
  std::optional<std::int64_t> conv_q;
  std::optional<std::int64_t> conv_index;
  std::optional<std::int64_t> H;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", c.output, "Write the report to this file instead of stdout");
  sub->add_option("--workers", c.workers, "Worker threads (default: PSLAB_WORKERS or all cores)")
      ->check(CLI::PositiveNumber);
}

void add_theory(CLI::App* sub, Theory& t, bool many_convergents) {
  sub->add_option("--alpha", t.alpha, "sqrt:D | dec:<digits> | rat:<a>/<b>")->required();
  sub->add_option("--beta", t.beta, "Decimal literal");
  sub->add_option("--gamma", t.gamma, "Exact rational p/q in (13/14, 1)")->required();
  sub->add_option("--C", t.C, "Constant in Delta");
  sub->add_option("--eps", t.eps, "Exponent slack in Delta");
  auto* q = sub->add_option("--conv-q", t.conv_q, "Convergent denominator");
  auto* k = sub->add_option("--conv-index", t.conv_index, "Convergent index, 1-based");
  if (!many_convergents) {
    q->expected(1);
    k->expected(1);
  }
  q->excludes(k);
}

std::int64_t isqrt(std::int64_t q) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(q)));
  while (r * r > q) --r;
  while ((r + 1) * (r + 1) <= q) ++r;
  return r;
}

Convergent resolve_by_q(const AlphaSpec& alpha, std::int64_t q) {
  if (q < 1) throw RangeError("--conv-q must be positive");
  const auto c = convergent_with_denominator(alpha, q);
  if (!c) {
    throw RangeError(std::to_string(q) + " is not a convergent denominator of " +
                     alpha.to_string());
  }
  return *c;
}

Convergent resolve_by_index(const AlphaSpec& alpha, std::int64_t k) {
  if (k < 1) throw RangeError("--conv-index is 1-based");
  return convergents(alpha, static_cast<std::size_t>(k)).back();
}

std::vector<Convergent> resolve_all(const AlphaSpec& alpha, const Theory& t) {
  std::vector<Convergent> out;
  for (auto q : t.conv_q) out.push_back(resolve_by_q(alpha, q));
  for (auto k : t.conv_index) out.push_back(resolve_by_index(alpha, k));
  if (out.empty()) throw RangeError("one of --conv-q or --conv-index is required");
  return out;
}

void theory_meta(Report& r, const Theory& t) {
  r.meta("alpha", t.alpha);
  r.meta("beta", t.beta);
  r.meta("gamma", t.gamma);
  r.meta("C", t.C);
  r.meta("eps", t.eps);
}

void params_meta(Report& r, const ExperimentParams& p) {
  r.meta("q", p.conv.q);
  r.meta("a", p.conv.a);
  r.meta("N", p.N);
  r.meta("Delta", p.Delta);
  r.meta("delta_clamped", p.delta_clamped);
  r.meta("H", p.H);
  r.meta("M", p.M);
  r.meta("theta", p.theta);
  r.meta("bits", static_cast<std::int64_t>(p.bits()));
}

void warn_clamp(std::ostream& err, const ExperimentParams& p) {
  if (p.delta_clamped) {
    err << "warning: Delta formula gives " << format_cell(p.delta_formula) << " >= 1/2 at q = "
        << p.conv.q << "; clamped to " << format_cell(kDeltaClamp) << '\n';
  }
}

ExperimentParams theory_params(const Theory& t, std::ostream& err) {
  const AlphaSpec alpha = AlphaSpec::parse(t.alpha);
  const auto convs = resolve_all(alpha, t);
  const auto p = derive_params(alpha, FixedReal::from_decimal(t.beta, kBetaBits),
                               Rational::parse(t.gamma), t.C, t.eps, convs.front());
  warn_clamp(err, p);
  return p;
}

Report cmd_params(const Theory& t, std::ostream& err) {
  const ExperimentParams p = theory_params(t, err);
  Report r({"q", "a", "N", "Delta", "delta_formula", "delta_clamped", "H", "M", "theta", "bits"});
  theory_meta(r, t);
  r.row({p.conv.q, p.conv.a, p.N, p.Delta, p.delta_formula, p.delta_clamped, p.H, p.M, p.theta,
         static_cast<std::int64_t>(p.bits())});
  return r;
}

Report cmd_ps_primes(const PsOpts& o, std::ostream& err) {
  const Rational gamma = Rational::parse(o.gamma);
  if (o.list) {
    Report r({"p", "n"});
    r.meta("gamma", o.gamma);
    r.meta("limit", o.limit);
    for (const auto& w : ps_primes(o.limit, gamma)) r.row({w.p, w.n});
    return r;
  }
  const auto policy = o.skip_ambiguous ? AmbiguityPolicy::skip_and_log : AmbiguityPolicy::strict;
  const PsCount c = ps_count(o.limit, gamma, policy);
  for (auto p : c.ambiguous) err << "warning: skipped ambiguous p = " << p << '\n';
  Report r({"X", "count", "ratio", "ambiguous"});
  r.meta("gamma", o.gamma);
  r.row({o.limit, c.count, c.ratio, static_cast<std::uint64_t>(c.ambiguous.size())});
  return r;
}

Report cmd_search(const Theory& t, std::ostream& err) {
  const ExperimentParams p = theory_params(t, err);
  const SearchResult s = solution_search(p);
  Report r({"p", "n", "dist", "passes"});
  theory_meta(r, t);
  params_meta(r, p);
  r.meta("ps_count", s.ps_count);
  r.meta("pass_count", static_cast<std::uint64_t>(s.solutions.size()));
  r.meta("ps_mass", s.ps_mass);
  r.meta("pass_mass", s.pass_mass);
  r.meta("expectation", s.expectation);
  r.meta("ratio", s.ratio);
  for (const auto& rec : s.solutions) r.row({rec.p, rec.n, rec.dist.to_string(20), rec.passes});
  return r;
}

Report cmd_gamma(const Theory& t, std::ostream& err) {
  const ExperimentParams p = theory_params(t, err);
  const GammaSums g = gamma_sums(p);
  Report r({"q", "N", "Delta", "Gamma", "Gamma1", "Gamma2", "residual", "prime_count", "ps_count"});
  theory_meta(r, t);
  params_meta(r, p);
  r.row({p.conv.q, p.N, p.Delta, g.gamma, g.gamma1, g.gamma2, g.residual, g.prime_count,
         g.ps_count});
  return r;
}

Report cmd_expsum(const ExpsumOpts& o) {
  const AlphaSpec alpha = AlphaSpec::parse(o.alpha);
  const std::string& kind = o.kind;
  const bool needs_gamma = kind == "Sigma" || kind == "frakS" || kind == "G";
  const bool needs_q = kind == "S" || kind == "Omega";
  std::optional<Rational> gamma;
  if (needs_gamma) {
    if (o.gamma.empty()) throw RangeError("--kind " + kind + " requires --gamma");
    gamma = Rational::parse(o.gamma);
  }
  std::int64_t q = 0;
  if (needs_q) {
    if (o.conv_q) {
      // A rational alpha has no admissible convergents; take q as given.
      q = alpha.is_irrational() ? resolve_by_q(alpha, *o.conv_q).q : *o.conv_q;
      if (q < 1) throw RangeError("--conv-q must be positive");
    } else if (o.conv_index) {
      q = resolve_by_index(alpha, *o.conv_index).q;
    } else {
      throw RangeError("--kind " + kind + " requires --conv-q or --conv-index");
    }
  }
  for (auto h : o.h) {
    if (h < 1) throw RangeError("--h values must be >= 1");
  }
  for (auto n : o.n) {
    if (n < 1) throw RangeError("--n values must be >= 1");
  }

  Report r({"kind", "h", "N", "value", "bound", "ratio"});
  r.meta("alpha", o.alpha);
  if (needs_gamma) r.meta("gamma", o.gamma);
  if (needs_q) r.meta("q", q);
  const AlphaSpec zero = AlphaSpec::rational(0, 1);
  for (auto N : o.n) {
    const double n = static_cast<double>(N);
    for (auto h : o.h) {
      BoundReport b;
      if (kind == "S") {
        b = ghosh_bound_report(alpha, h, N, dirichlet_approx(alpha, h, q));
      } else if (kind == "Sigma") {
        const double g = gamma->to_double();
        b = BoundReport::make(std::abs(sigma_sum(alpha, h, *gamma, N)),
                              std::pow(n, (15.0 * g + 13.0) / 29.0));
      } else if (kind == "frakS") {
        // Bound: the same sum with every phase equal to one.
        const double u = static_cast<double>(h);
        b = BoundReport::make(weighted_partial_sums(alpha, *gamma, N, u).frak_s,
                              weighted_partial_sums(zero, *gamma, N, 1.0).frak_s * u);
      } else if (kind == "G") {
        // Bound: u theta(N), from |psi difference| <= 1.
        const double u = static_cast<double>(h);
        b = BoundReport::make(weighted_partial_sums(alpha, *gamma, N, u).g,
                              u * prime_phase_sum(zero, 1, N).real());
      } else {
        const std::uint64_t H = o.H ? *o.H : static_cast<std::uint64_t>(isqrt(q));
        b = omega_bound_report(alpha, FixedReal::from_decimal(o.beta, kBetaBits), o.delta, H, N,
                               q);
      }
      r.row({kind, h, N, b.value, b.bound, b.ratio});
    }
  }
  return r;
}

PhaseSpec vaughan_phase(const VaughanOpts& o) {
  if (o.phase == "zero") return PhaseSpec::zero();
  if (o.phase == "monomial") {
    return PhaseSpec::monomial(FixedReal::from_decimal(o.sigma, kBetaBits), o.degree);
  }
  return PhaseSpec::bilinear(AlphaSpec::parse(o.alpha), o.h, o.m, Rational::parse(o.gamma));
}

Report cmd_vaughan(const VaughanOpts& o) {
  const PhaseSpec phase = vaughan_phase(o);
  const IdentityCheck c = identity_check(o.n1, o.n2, o.theta, phase);
  Report r({"quantity", "re", "im"});
  r.meta("N1", o.n1);
  r.meta("N2", o.n2);
  r.meta("theta", o.theta);
  r.meta("phase", phase.to_string());
  const auto add = [&](const char* name, std::complex<double> z) {
    r.row({std::string(name), z.real(), z.imag()});
  };
  add("Theta1", c.thetas.theta1);
  add("Theta2", c.thetas.theta2);
  add("Theta3", c.thetas.theta3);
  add("Theta4", c.thetas.theta4);
  add("Phi_direct", c.phi_direct);
  add("residual", c.residual);
  return r;
}

Report cmd_bounds(const Theory& t, std::ostream& err) {
  const ExperimentParams p = theory_params(t, err);
  const double n = static_cast<double>(p.N);
  const double g = p.gamma.to_double();
  Report r({"check", "h", "N", "value", "bound", "ratio"});
  theory_meta(r, t);
  params_meta(r, p);
  const auto H = static_cast<std::int64_t>(p.H);
  for (std::int64_t h = 1; h <= H; ++h) {
    const auto b = ghosh_bound_report(p.alpha, h, p.N, dirichlet_approx(p.alpha, h, p.conv.q));
    r.row({std::string("S"), h, p.N, b.value, b.bound, b.ratio});
  }
  const double sigma_bound = std::pow(n, (15.0 * g + 13.0) / 29.0);
  for (std::int64_t h = 1; h <= H; ++h) {
    const auto b =
        BoundReport::make(std::abs(sigma_sum(p.alpha, h, p.gamma, p.N)), sigma_bound);
    r.row({std::string("Sigma"), h, p.N, b.value, b.bound, b.ratio});
  }
  const auto om = omega_bound_report(p.alpha, p.beta, p.Delta, p.H, p.N, p.conv.q);
  r.row({std::string("Omega"), H, p.N, om.value, om.bound, om.ratio});
  return r;
}

Report cmd_scaling(const Theory& t, std::ostream& err) {
  const AlphaSpec alpha = AlphaSpec::parse(t.alpha);
  const auto convs = resolve_all(alpha, t);
  const FixedReal beta = FixedReal::from_decimal(t.beta, kBetaBits);
  const Rational gamma = Rational::parse(t.gamma);
  for (const auto& c : convs) warn_clamp(err, derive_params(alpha, beta, gamma, t.C, t.eps, c));
  const auto rows = scaling_report(alpha, beta, gamma, t.C, t.eps, convs);
  Report r({"q", "N", "Delta", "H", "M", "theta", "abs_gamma", "gamma_norm", "pass_count",
            "expectation", "ratio"});
  theory_meta(r, t);
  for (const auto& row : rows) {
    const std::string tag = "[q=" + std::to_string(row.q) + "]";
    r.meta("delta_clamped" + tag, row.delta_clamped);
    r.meta("omega" + tag, row.omega);
    r.meta("omega_ratio" + tag, row.omega_ratio);
  }
  for (const auto& row : rows) {
    r.row({row.q, row.N, row.Delta, row.H, row.M, row.theta, row.abs_gamma, row.gamma_norm,
           row.pass_count, row.expectation, row.ratio});
  }
  return r;
}

Report cmd_qh_audit(const AuditOpts& o) {
  const AlphaSpec alpha = AlphaSpec::parse(o.alpha);
  Convergent conv;
  if (o.conv_q) {
    conv = resolve_by_q(alpha, *o.conv_q);
  } else if (o.conv_index) {
    conv = resolve_by_index(alpha, *o.conv_index);
  } else {
    throw RangeError("one of --conv-q or --conv-index is required");
  }
  const std::int64_t H = o.H ? *o.H : isqrt(conv.q);
  if (H < 0) throw RangeError("--H must be >= 0");
  const QhAudit audit = qh_range_audit(alpha, conv, H);
  Report r({"h", "a_h", "q_h", "in_range"});
  r.meta("alpha", o.alpha);
  r.meta("q", conv.q);
  r.meta("a", conv.a);
  r.meta("H", H);
  r.meta("violations", static_cast<std::uint64_t>(audit.violations));
  for (const auto& row : audit.rows) r.row({row.h, row.a_h, row.q_h, row.in_range});
  return r;
}

class WorkerScope {
 public:
  explicit WorkerScope(int workers) : saved_(worker_count()) {
    if (workers > 0) set_worker_count(workers);
  }
  ~WorkerScope() { set_worker_count(saved_); }
  WorkerScope(const WorkerScope&) = delete;
  WorkerScope& operator=(const WorkerScope&) = delete;

 private:
  int saved_;
};

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Piatetski-Shapiro prime laboratory", "pslab"};
  app.require_subcommand(1);
  // --h is the frequency option, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", PSLAB_VERSION);

  Common common;
  Theory theory;
  PsOpts ps;
  ExpsumOpts ex;
  VaughanOpts va;
  AuditOpts au;

  auto* params = app.add_subcommand("params", "Derive N, Delta, H, M, theta from a convergent");
  auto* ps_cmd = app.add_subcommand("ps-primes", "Count or list Piatetski-Shapiro primes");
  auto* search = app.add_subcommand("search", "PS primes p <= N with ||alpha p^2 + beta|| < Delta");
  auto* gamma = app.add_subcommand("gamma", "Gamma and its split into Gamma1 + Gamma2");
  auto* expsum = app.add_subcommand("expsum", "Exponential sums against their bounds");
  auto* vaughan = app.add_subcommand("vaughan-check", "Vaughan decomposition of Phi(N1, N2)");
  auto* bounds = app.add_subcommand("bounds-report", "S, Sigma and Omega ratios at one convergent");
  auto* scaling = app.add_subcommand("scaling-report", "Gamma and search summary per convergent");
  auto* qh = app.add_subcommand("qh-audit", "Where the Dirichlet denominators q_h land");

  for (auto* sub : {params, ps_cmd, search, gamma, expsum, vaughan, bounds, scaling, qh}) {
    add_common(sub, common);
  }
  for (auto* sub : {params, search, gamma, bounds}) add_theory(sub, theory, false);
  add_theory(scaling, theory, true);

  ps_cmd->add_option("--gamma", ps.gamma, "Exact rational p/q in (0, 1)")->required();
  ps_cmd->add_option("--limit", ps.limit, "Upper bound X")->required();
  ps_cmd->add_flag("--list", ps.list, "Emit p,n rows instead of the count");
  ps_cmd->add_flag("--skip-ambiguous", ps.skip_ambiguous,
                   "Skip and log primes whose floor stays ambiguous");

  expsum->add_option("--kind", ex.kind, "Which sum")
      ->required()
      ->check(CLI::IsMember({"S", "Sigma", "frakS", "G", "Omega"}));
  expsum->add_option("--alpha", ex.alpha, "sqrt:D | dec:<digits> | rat:<a>/<b>")->required();
  expsum->add_option("--beta", ex.beta, "Decimal literal (Omega)");
  expsum->add_option("--gamma", ex.gamma, "Exact rational p/q (Sigma, frakS, G)");
  expsum->add_option("--h", ex.h, "Frequencies h (u for frakS and G)");
  expsum->add_option("--n", ex.n, "Lengths N")->required();
  auto* eq = expsum->add_option("--conv-q", ex.conv_q, "Convergent denominator (S, Omega)");
  auto* ek = expsum->add_option("--conv-index", ex.conv_index, "Convergent index (S, Omega)");
  eq->excludes(ek);
  expsum->add_option("--delta", ex.delta, "Delta in (0, 1/2) (Omega)");
  expsum->add_option("--H", ex.H, "H (Omega, default [q^(1/2)])");

  vaughan->add_option("--n1", va.n1, "N1")->required();
  vaughan->add_option("--n2", va.n2, "N2")->required();
  vaughan->add_option("--theta", va.theta, "Cutoff theta >= 2")->required();
  vaughan->add_option("--phase", va.phase, "Phase kind")
      ->check(CLI::IsMember({"zero", "monomial", "bilinear"}));
  vaughan->add_option("--sigma", va.sigma, "Monomial coefficient (decimal)");
  vaughan->add_option("--degree", va.degree, "Monomial degree 1..3");
  vaughan->add_option("--alpha", va.alpha, "Bilinear alpha");
  vaughan->add_option("--h", va.h, "Bilinear h");
  vaughan->add_option("--m", va.m, "Bilinear m");
  vaughan->add_option("--gamma", va.gamma, "Bilinear gamma, exact rational");

  qh->add_option("--alpha", au.alpha, "sqrt:D | dec:<digits> | rat:<a>/<b>")->required();
  auto* aq = qh->add_option("--conv-q", au.conv_q, "Convergent denominator");
  auto* ak = qh->add_option("--conv-index", au.conv_index, "Convergent index, 1-based");
  aq->excludes(ak);
  qh->add_option("--H", au.H, "Number of h values (default [q^(1/2)])");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    CLI::App* target = &app;
    for (auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << PSLAB_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    CLI::App* target = &app;
    for (auto* sub : app.get_subcommands()) target = sub;
    err << "error: " << e.what() << "\n\n" << target->help();
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    WorkerScope workers(common.workers);
    Report report({});
    if (sub == params) report = cmd_params(theory, err);
    else if (sub == ps_cmd) report = cmd_ps_primes(ps, err);
    else if (sub == search) report = cmd_search(theory, err);
    else if (sub == gamma) report = cmd_gamma(theory, err);
    else if (sub == expsum) report = cmd_expsum(ex);
    else if (sub == vaughan) report = cmd_vaughan(va);
    else if (sub == bounds) report = cmd_bounds(theory, err);
    else if (sub == scaling) report = cmd_scaling(theory, err);
    else report = cmd_qh_audit(au);

    report.meta_front("command", name);
    report.meta_front("tool", std::string("pslab ") + PSLAB_VERSION);
    // Render fully before touching the destination so a failure never
    // leaves a partial report behind.
    std::ostringstream text;
    report.write(text, common.format == "json" ? Format::json : Format::csv);
    if (common.output.empty()) {
      out << text.str();
    } else {
      std::ofstream file(common.output, std::ios::binary | std::ios::trunc);
      if (!file) throw RangeError("cannot open output file " + common.output);
      file << text.str();
      if (!file.flush()) throw RangeError("failed writing output file " + common.output);
    }
    return kExitOk;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace pslab::cli
