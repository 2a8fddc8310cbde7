#include "pslab/diophantine.hpp"

#include <algorithm>
#include <charconv>

#include "pslab/errors.hpp"
#include "pslab/parallel.hpp"

namespace pslab {

namespace {

std::int64_t parse_i64(std::string_view text, std::string_view whole) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || text.front() == '+' || ec != std::errc() ||
      ptr != text.data() + text.size()) {
    throw ParseError("malformed alpha spec '" + std::string(whole) + "'");
  }
  return v;
}

std::int64_t to_i64(const mpz_class& v, const char* what) {
  if (!v.fits_slong_p()) {
    throw RangeError(std::string(what) + " exceeds the 64-bit range");
  }
  return v.get_si();
}

mpz_class isqrt(const mpz_class& n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

}  // namespace

AlphaSpec AlphaSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("alpha spec '" + std::string(text) +
                     "' must be sqrt:D, dec:<digits> or rat:<a>/<b>");
  }
  const std::string_view tag = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  if (tag == "sqrt") {
    if (!body.empty() && body.front() == '-') {
      throw ParseError("malformed alpha spec '" + std::string(text) + "'");
    }
    return surd(parse_i64(body, text));
  }
  if (tag == "rat") {
    const auto slash = body.find('/');
    if (slash == std::string_view::npos) {
      throw ParseError("malformed alpha spec '" + std::string(text) + "'");
    }
    const std::string_view den = body.substr(slash + 1);
    if (!den.empty() && den.front() == '-') {
      throw ParseError("malformed alpha spec '" + std::string(text) + "'");
    }
    return rational(parse_i64(body.substr(0, slash), text), parse_i64(den, text));
  }
  if (tag == "dec") return decimal(body);
  throw ParseError("unknown alpha kind '" + std::string(tag) + "'");
}

AlphaSpec AlphaSpec::surd(std::int64_t d) {
  if (d < 2) throw ParseError("sqrt:D requires D >= 2");
  if (mpz_perfect_square_p(mpz_class(static_cast<long>(d)).get_mpz_t())) {
    throw ParseError("sqrt:" + std::to_string(d) + " is rational (perfect square)");
  }
  AlphaSpec s;
  s.kind_ = Kind::surd;
  s.radicand_ = d;
  s.text_ = "sqrt:" + std::to_string(d);
  return s;
}

AlphaSpec AlphaSpec::rational(std::int64_t a, std::int64_t b) {
  if (b <= 0) throw ParseError("rat:a/b requires b > 0");
  AlphaSpec s;
  s.kind_ = Kind::rational;
  s.value_ = mpq_class(mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(b)));
  s.value_.canonicalize();
  s.text_ = "rat:" + std::to_string(a) + "/" + std::to_string(b);
  return s;
}

AlphaSpec AlphaSpec::decimal(std::string_view digits) {
  // Reuse the fixed-point parser for grammar validation.
  (void)FixedReal::from_decimal(digits, FixedReal::kMinBits);
  std::string_view body = digits;
  const bool negative = !body.empty() && body.front() == '-';
  if (negative) body.remove_prefix(1);
  const auto dot = body.find('.');
  const std::string_view frac_part =
      dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  const std::string int_part(body.substr(0, dot));

  AlphaSpec s;
  s.kind_ = Kind::decimal;
  mpz_class num(int_part + std::string(frac_part), 10);
  if (negative) num = -num;
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
  s.value_ = mpq_class(num, den);
  s.value_.canonicalize();
  s.frac_digits_ = frac_part.size();
  s.text_ = "dec:" + std::string(digits);
  return s;
}

AlphaSpec AlphaSpec::plus_integer(std::int64_t k) const {
  AlphaSpec s = *this;
  if (kind_ == Kind::surd) {
    s.shift_ += k;
  } else {
    s.value_ += mpq_class(mpz_class(static_cast<long>(k)));
  }
  s.text_ = text_ + (k >= 0 ? "+" : "") + std::to_string(k);
  return s;
}

FixedReal AlphaSpec::evaluate(int bits) const {
  switch (kind_) {
    case Kind::surd: {
      mpz_class scaled(static_cast<long>(radicand_));
      mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(),
                   2 * static_cast<unsigned long>(bits));
      return FixedReal(isqrt(scaled), bits) +
             FixedReal::from_integer(shift_, bits);
    }
    case Kind::decimal:
      if (3 * frac_digits_ < static_cast<std::size_t>(bits)) {
        throw PrecisionExhausted(text_ + " carries " + std::to_string(frac_digits_) +
                                 " digits, too few for " + std::to_string(bits) +
                                 " bits");
      }
      [[fallthrough]];
    case Kind::rational: {
      FixedReal v = FixedReal::from_ratio(value_.get_num(), value_.get_den(), bits);
      // from_ratio rounds to nearest; step down when it rounded up.
      mpz_class p2;
      mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(bits));
      if (mpq_class(v.mantissa(), p2) > value_) {
        return FixedReal(v.mantissa() - 1, bits);
      }
      return v;
    }
  }
  return {};
}

std::optional<mpq_class> AlphaSpec::exact_value() const {
  if (kind_ == Kind::surd) return std::nullopt;
  return value_;
}

std::string AlphaSpec::to_string() const { return text_; }

AlphaSpec::QuotientStream AlphaSpec::quotients(std::int64_t h) const {
  if (h < 1) throw RangeError("quotient stream requires h >= 1");
  QuotientStream s;
  s.kind_ = kind_;
  const mpz_class hz(static_cast<long>(h));
  if (kind_ == Kind::surd) {
    s.radicand_ = hz * hz * mpz_class(static_cast<long>(radicand_));
    s.root_ = isqrt(s.radicand_);
    s.m_ = 0;
    s.d_ = 1;
    s.offset_ = hz * mpz_class(static_cast<long>(shift_));
  } else {
    s.num_ = hz * value_.get_num();
    s.den_ = value_.get_den();
  }
  return s;
}

std::optional<mpz_class> AlphaSpec::QuotientStream::next() {
  if (kind_ == Kind::surd) {
    if (first_) {
      first_ = false;
      // offset_ is consumed once; thereafter the stream tracks sqrt(N).
      return root_ + offset_;
    }
    const mpz_class a_prev = (root_ + m_) / d_;
    m_ = d_ * a_prev - m_;
    d_ = (radicand_ - m_ * m_) / d_;
    return mpz_class((root_ + m_) / d_);
  }
  if (done_) return std::nullopt;
  mpz_class a;
  mpz_fdiv_q(a.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  const mpz_class rem = num_ - a * den_;
  num_ = den_;
  den_ = rem;
  if (den_ == 0) done_ = true;
  return a;
}

namespace {

// Walks convergents of h * alpha, calling visit(p, q) for each; stops when
// visit returns false or the expansion ends. Returns false iff it ended.
template <class Visit>
bool walk_convergents(const AlphaSpec& alpha, std::int64_t h, Visit&& visit) {
  auto stream = alpha.quotients(h);
  mpz_class p_prev(1), q_prev(0), p_prev2(0), q_prev2(1);
  while (auto a = stream.next()) {
    const mpz_class p = *a * p_prev + p_prev2;
    const mpz_class q = *a * q_prev + q_prev2;
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = p;
    q_prev = q;
    if (!visit(p, q)) return true;
  }
  return false;
}

}  // namespace

bool approximation_holds(const AlphaSpec& alpha, std::int64_t h, std::int64_t a,
                         std::int64_t den, std::int64_t bound, bool strict,
                         int bits) {
  if (den < 1 || bound < 1 || h < 1) {
    throw RangeError("approximation check requires positive h, den, bound");
  }
  const mpz_class hz(static_cast<long>(h)), az(static_cast<long>(a)),
      dz(static_cast<long>(den)), bz(static_cast<long>(bound));
  if (auto exact = alpha.exact_value()) {
    mpq_class diff = *exact * mpq_class(hz * dz) - mpq_class(az);
    diff = abs(diff) * mpq_class(bz);
    return strict ? diff < 1 : diff <= 1;
  }
  if (bits == 0) bits = 2 * bit_length(hz * dz * bz) + 64;
  const FixedReal v = alpha.evaluate(bits);
  FixedReal diff = v * mpz_class(hz * dz) - FixedReal::from_integer(az, bits);
  if (diff.sign() < 0) diff = -diff;
  const FixedReal threshold = FixedReal::from_ratio(1, bz, bits);
  // |error| <= h*den*2^-bits from evaluation plus 2^-bits from the threshold.
  const FixedReal err(hz * dz + 1, bits);
  if (diff + err < threshold) return true;
  if (diff - err > threshold) return false;
  throw PrecisionExhausted("cannot certify " + std::to_string(a) + "/" +
                           std::to_string(den) + " for " + alpha.to_string() +
                           " at " + std::to_string(bits) + " bits");
}

std::vector<Convergent> convergents(const AlphaSpec& alpha, std::size_t count) {
  std::vector<Convergent> out;
  if (count == 0) return out;
  std::string seen;
  const bool stopped = walk_convergents(alpha, 1, [&](const mpz_class& p,
                                                      const mpz_class& q) {
    seen += (seen.empty() ? "" : ", ") + p.get_str() + "/" + q.get_str();
    if (p == 0) return true;
    out.push_back({to_i64(p, "convergent numerator"), to_i64(q, "convergent denominator")});
    return out.size() < count;
  });
  if (!stopped) {
    throw RationalAlpha(alpha.to_string() + " has a finite expansion; only " +
                        std::to_string(out.size()) + " usable convergents (" +
                        seen + ")");
  }
  for (const auto& c : out) {
    if (!approximation_holds(alpha, 1, c.a, c.q, c.q, true)) {
      throw BoundViolated("convergent " + std::to_string(c.a) + "/" +
                          std::to_string(c.q) + " fails |alpha - a/q| < 1/q^2");
    }
  }
  return out;
}

std::optional<Convergent> convergent_with_denominator(const AlphaSpec& alpha,
                                                      std::int64_t q) {
  std::optional<Convergent> found;
  const mpz_class target(static_cast<long>(q));
  walk_convergents(alpha, 1, [&](const mpz_class& p, const mpz_class& qq) {
    if (qq == target && p != 0) {
      found = Convergent{to_i64(p, "convergent numerator"), q};
      return false;
    }
    return qq <= target;
  });
  return found;
}

DirichletApproximant dirichlet_approx(const AlphaSpec& alpha, std::int64_t h,
                                      std::int64_t q) {
  if (q < 1 || q > 3'000'000'000LL) throw RangeError("dirichlet_approx requires 1 <= q <= 3e9");
  const mpz_class limit = mpz_class(static_cast<long>(q)) * q;
  mpz_class best_p, best_q;
  walk_convergents(alpha, h, [&](const mpz_class& p, const mpz_class& qq) {
    if (qq > limit) return false;
    best_p = p;
    best_q = qq;
    return true;
  });
  DirichletApproximant d{h, to_i64(best_p, "a_h"), to_i64(best_q, "q_h")};
  if (!approximation_holds(alpha, h, d.a_h, d.q_h, q * q, false)) {
    throw BoundViolated("Dirichlet approximant " + std::to_string(d.a_h) + "/" +
                        std::to_string(d.q_h) + " fails its inequality");
  }
  return d;
}

QhAudit qh_range_audit(const AlphaSpec& alpha, const Convergent& conv,
                       std::int64_t H) {
  QhAudit audit;
  if (H <= 0) return audit;
  const mpz_class qz(static_cast<long>(conv.q));
  audit.rows = ordered_map<QhAuditRow>(static_cast<std::size_t>(H), [&](std::size_t i) {
    const auto h = static_cast<std::int64_t>(i) + 1;
    const DirichletApproximant d = dirichlet_approx(alpha, h, conv.q);
    const mpz_class qh(static_cast<long>(d.q_h));
    const bool in_range = qh * qh * qh > qz && qh <= qz * qz;
    return QhAuditRow{h, d.a_h, d.q_h, in_range};
  });
  audit.violations = static_cast<std::size_t>(
      std::count_if(audit.rows.begin(), audit.rows.end(),
                    [](const QhAuditRow& r) { return !r.in_range; }));
  return audit;
}

}  // namespace pslab
