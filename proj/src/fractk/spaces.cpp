#include "fractk/spaces.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace fractk {

namespace {

// Scalar that carries an exact rational representation when the input is a
// recognizable simple rational (small continued fraction that round-trips to
// the same double). Threshold comparisons are then exact; otherwise they use
// a 1e-12 guard band that maps near-threshold queries to the borderline
// branch.
struct Scalar {
  double v = 0;
  bool exact = false;
  long long num = 0;
  long long den = 1;

  static Scalar from_int(long long k) { return {double(k), true, k, 1}; }

  static Scalar from_double(double x) {
    Scalar s;
    s.v = x;
    if (!std::isfinite(x)) return s;
    // continued-fraction reconstruction with a denominator cap
    double target = x;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = target;
    for (int it = 0; it < 64; ++it) {
      double fl = std::floor(frac);
      if (std::abs(fl) > 1e15) break;
      long long a = (long long)fl;
      long long p2 = a * p1 + p0;
      long long q2 = a * q1 + q0;
      if (q2 > 1000000 || q2 < 0) break;
      p0 = p1;
      q0 = q1;
      p1 = p2;
      q1 = q2;
      if (q1 != 0 && double(p1) / double(q1) == x) {
        s.exact = true;
        s.num = p1;
        s.den = q1;
        return s;
      }
      double rem = frac - fl;
      if (rem < 1e-15) break;
      frac = 1.0 / rem;
    }
    return s;
  }

  Scalar degrade() const { return {v, false, 0, 1}; }
};

bool mul_overflows(long long a, long long b) {
  __int128 r = (__int128)a * b;
  return r > INT64_MAX || r < INT64_MIN;
}

Scalar normalize(Scalar s) {
  if (!s.exact) return s;
  if (s.den < 0) {
    s.num = -s.num;
    s.den = -s.den;
  }
  long long a = std::abs(s.num), b = s.den;
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    s.num /= a;
    s.den /= a;
  }
  s.v = double(s.num) / double(s.den);
  return s;
}

Scalar operator+(Scalar a, Scalar b) {
  Scalar r;
  r.v = a.v + b.v;
  if (a.exact && b.exact && !mul_overflows(a.num, b.den) && !mul_overflows(b.num, a.den) &&
      !mul_overflows(a.den, b.den)) {
    long long n1 = a.num * b.den, n2 = b.num * a.den;
    if ((n2 > 0 && n1 > INT64_MAX - n2) || (n2 < 0 && n1 < INT64_MIN - n2)) return r;
    r.exact = true;
    r.num = n1 + n2;
    r.den = a.den * b.den;
    return normalize(r);
  }
  return r;
}

Scalar operator-(Scalar a, Scalar b) {
  b.num = -b.num;
  b.v = -b.v;
  return a + b;
}

Scalar operator*(Scalar a, Scalar b) {
  Scalar r;
  r.v = a.v * b.v;
  if (a.exact && b.exact && !mul_overflows(a.num, b.num) && !mul_overflows(a.den, b.den)) {
    r.exact = true;
    r.num = a.num * b.num;
    r.den = a.den * b.den;
    return normalize(r);
  }
  return r;
}

Scalar operator/(Scalar a, Scalar b) {
  Scalar r;
  r.v = a.v / b.v;
  if (a.exact && b.exact && b.num != 0 && !mul_overflows(a.num, b.den) &&
      !mul_overflows(a.den, b.num)) {
    r.exact = true;
    r.num = a.num * b.den;
    r.den = a.den * b.num;
    return normalize(r);
  }
  return r;
}

enum class Cmp { Below, At, Above };

Cmp compare(Scalar a, Scalar b) {
  if (a.exact && b.exact) {
    __int128 lhs = (__int128)a.num * b.den;
    __int128 rhs = (__int128)b.num * a.den;
    if (lhs < rhs) return Cmp::Below;
    if (lhs > rhs) return Cmp::Above;
    return Cmp::At;
  }
  double tol = 1e-12 * std::max({1.0, std::abs(a.v), std::abs(b.v)});
  if (std::abs(a.v - b.v) <= tol) return Cmp::At;
  return a.v < b.v ? Cmp::Below : Cmp::Above;
}

Cmp compare(Scalar a, double b) { return compare(a, Scalar::from_double(b)); }

Verdict unknown(const std::string& reason) { return {"Unknown", "", std::nullopt, reason}; }

void validate_params(const SpaceParams& sp) {
  if (!(sp.p > 0) || !std::isfinite(sp.p)) throw std::invalid_argument("p must be in (0,inf)");
  if (!(sp.q > 0) || !std::isfinite(sp.q)) throw std::invalid_argument("q must be in (0,inf)");
  if (sp.n < 1) throw std::invalid_argument("n must be >= 1");
  if (sp.family == SpaceFamily::H) {
    if (sp.q != 2) throw std::invalid_argument("H scale requires q = 2");
    if (!(sp.p > 1)) throw std::invalid_argument("H scale requires 1 < p < inf");
  }
}

bool hilbert_like(const SpaceParams& sp) {
  return sp.family == SpaceFamily::H || (sp.family == SpaceFamily::F && sp.q == 2);
}

// (n - d) (p - 1) / p, the codimension smoothness offset.
Scalar codim_over_pprime(int n, Scalar d, Scalar p) {
  return (Scalar::from_int(n) - d) * (p - Scalar::from_int(1)) / p;
}

bool is_dset_like(SetKind kind) {
  return kind == SetKind::DSet || kind == SetKind::Hyperplane ||
         kind == SetKind::SnowflakeBoundary;
}

long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

double conjugate_exponent(double p) {
  if (!(p > 1) || !std::isfinite(p))
    throw std::invalid_argument("conjugate_exponent: p must be in (1,inf)");
  return p / (p - 1);
}

Verdict nullity_classify(const SpaceParams& sp, const SetDescriptor& set) {
  validate_params(sp);
  if (set.kind == SetKind::ThickDomainClosure)
    throw std::invalid_argument("nullity_classify: set must have zero Lebesgue measure");
  Scalar d = Scalar::from_double(set.d);
  Scalar n = Scalar::from_int(sp.n);
  if (set.kind == SetKind::PointSet && set.d != 0)
    throw std::invalid_argument("nullity_classify: point sets have d = 0");
  if (!(set.d >= 0) || compare(d, n) == Cmp::Above)
    throw std::invalid_argument("nullity_classify: need 0 <= d <= n");
  if (compare(d, n) == Cmp::At && set.kind != SetKind::PointSet)
    throw std::invalid_argument("nullity_classify: d = n carries positive measure");

  Scalar s = Scalar::from_double(sp.s);
  Scalar p = Scalar::from_double(sp.p);
  if (sp.p > 1) {
    Scalar threshold = (d - n) * (p - Scalar::from_int(1)) / p;  // (d-n)/p'
    switch (compare(s, threshold)) {
      case Cmp::Above:
        return {"Null", "nullity-criterion", std::nullopt, "s above (d-n)/p'"};
      case Cmp::Below:
        return {"NonNull", "nullity-criterion", std::nullopt, "s below (d-n)/p'"};
      case Cmp::At:
        break;
    }
    bool critical_null = hilbert_like(sp) && set.d > 0 && set.d < sp.n &&
                         (set.kind == SetKind::Hyperplane ||
                          (is_dset_like(set.kind) && set.compact));
    if (critical_null)
      return {"Null", "critical-case-nullity", std::nullopt,
              "compact d-set or hyperplane at the critical exponent"};
    return {"Borderline", "", std::nullopt, "critical exponent s = (d-n)/p'"};
  }
  // 0 < p <= 1
  Scalar threshold = n * (Scalar::from_int(1) - p) / p;  // n(1/p - 1)
  switch (compare(s, threshold)) {
    case Cmp::Above:
      return {"Null", "nullity-criterion", std::nullopt, "s above n(1/p-1)"};
    case Cmp::Below:
      return {"NonNull", "nullity-criterion", std::nullopt, "s below n(1/p-1)"};
    case Cmp::At:
      return {"Borderline", "", std::nullopt, "critical exponent s = n(1/p-1)"};
  }
  return unknown("unreachable");
}

Verdict q1_equality_decide(const SetDescriptor& domain, const SpaceParams& sp) {
  validate_params(sp);
  if (!domain.thick)
    return unknown("thickness not established (thickness is sufficient, not necessary)");
  if (!domain.boundary_measure_zero)
    return unknown("boundary measure zero not established");
  if (sp.family == SpaceFamily::H)
    return {"Yes", "thick-domain-sobolev-equality", std::nullopt,
            "thick domain, |boundary| = 0, any s"};
  if (!(sp.p > 1) || !(sp.q > 1))
    return unknown("corollary needs 1 < p,q < inf");
  if (compare(Scalar::from_double(sp.s), 0.0) == Cmp::At)
    return unknown("s = 0 not covered on the A scale");
  return {"Yes", "thick-domain-equality", std::nullopt,
          "thick domain, |boundary| = 0, s nonzero"};
}

std::pair<double, double> density_window(int n, double d, double p, int m) {
  if (!(d > 0) || !(d < n)) throw std::invalid_argument("density_window: need 0 < d < n");
  if (!(p > 1) || !std::isfinite(p))
    throw std::invalid_argument("density_window: need 1 < p < inf");
  if (m < 0) throw std::invalid_argument("density_window: need m >= 0");
  Scalar tau = codim_over_pprime(n, Scalar::from_double(d), Scalar::from_double(p));
  Scalar lo = Scalar::from_int(0) - tau - Scalar::from_int(m + 1);
  Scalar hi = Scalar::from_int(0) - tau - Scalar::from_int(m);
  return {lo.v, hi.v};
}

Verdict density_decide(double s1, double s2, const SpaceParams& sp, const SetDescriptor& set) {
  validate_params(sp);
  if (s1 < s2) throw std::invalid_argument("density_decide: need s1 >= s2");
  if (!is_dset_like(set.kind))
    return unknown("set is not a d-set; no cited statement applies");
  if (!(set.d > 0) || !(set.d < sp.n)) return unknown("need 0 < d < n for the d-set results");
  if (!(sp.p > 1)) return unknown("cited statements need 1 < p < inf");

  // Nullity gap: the upper space is trivial, the lower one is not.
  SpaceParams sp1 = sp, sp2 = sp;
  sp1.s = s1;
  sp2.s = s2;
  Verdict v1 = nullity_classify(sp1, set);
  Verdict v2 = nullity_classify(sp2, set);
  if (v1.answer == "Null" && v2.answer == "NonNull")
    return {"NotDense", "nullity-gap", std::nullopt,
            "upper space trivial, lower space non-trivial"};

  Scalar tau = codim_over_pprime(sp.n, Scalar::from_double(set.d), Scalar::from_double(sp.p));
  Scalar S1 = Scalar::from_double(s1), S2 = Scalar::from_double(s2);
  bool family_in_theorem = sp.family == SpaceFamily::H ||
                           (sp.family == SpaceFamily::B && sp.q > 1) ||
                           (sp.family == SpaceFamily::F && sp.q == 2);

  int m_cap = int(std::ceil(std::abs(s2) + std::abs(tau.v))) + 2;
  for (int m = 0; m <= m_cap; ++m) {
    Scalar lo = Scalar::from_int(0) - tau - Scalar::from_int(m + 1);
    Scalar hi = Scalar::from_int(0) - tau - Scalar::from_int(m);
    Cmp c2 = compare(S2, lo);
    Cmp c1 = compare(S1, hi);
    if (c2 == Cmp::Above && c1 == Cmp::Below) {
      if (family_in_theorem)
        return {"Dense", "density-window", std::pair{lo.v, hi.v},
                "both exponents inside one window"};
      return unknown("window applies to B and H scales only");
    }
    // Hyperplane H-scale windows are closed at the bottom.
    if (set.kind == SetKind::Hyperplane && hilbert_like(sp) && c2 == Cmp::At &&
        c1 == Cmp::Below) {
      return {"Dense", "hyperplane-span-window", std::pair{lo.v, hi.v},
              "hyperplane window, closed lower endpoint"};
    }
  }

  // Straddling counterexample for hyperplanes and smooth integer-d sets.
  bool integer_d = compare(Scalar::from_double(set.d),
                           Scalar::from_int((long long)std::llround(set.d))) == Cmp::At;
  bool counterexample_kind =
      set.kind == SetKind::Hyperplane || (set.smooth && integer_d);
  bool counterexample_family = hilbert_like(sp) || sp.family == SpaceFamily::B;
  if (counterexample_kind && counterexample_family) {
    for (int M = 1; M <= m_cap; ++M) {
      Scalar threshold = Scalar::from_int(0) - tau - Scalar::from_int(M);
      if (compare(S1, threshold) == Cmp::Above && compare(S2, threshold) == Cmp::Below)
        return {"NotDense", "derivative-jump-counterexample", std::nullopt,
                "exponents straddle a derivative-order threshold"};
    }
  }
  return unknown("no cited statement decides this configuration");
}

long long point_space_dimension(int n, double p, double s) {
  if (n < 1) throw std::invalid_argument("point_space_dimension: n >= 1");
  if (!(p > 0) || !std::isfinite(p))
    throw std::invalid_argument("point_space_dimension: p in (0,inf)");
  Scalar P = Scalar::from_double(p);
  Scalar t = Scalar::from_int(0) - Scalar::from_double(s) -
             Scalar::from_int(n) * (Scalar::from_int(1) - Scalar::from_int(1) / P);
  if (compare(t, 0.0) != Cmp::Above) return 0;
  long long total = 0;
  for (long long k = 0; k < 256; ++k) {
    if (compare(Scalar::from_int(k), t) != Cmp::Below) break;
    total += binomial(k + n - 1, n - 1);
  }
  return total;
}

Verdict d0_density_decide(double s1, double p1, double q1, double s2, double p2, double q2,
                          int n) {
  SpaceParams a{SpaceFamily::B, s1, p1, q1, n};
  SpaceParams b{SpaceFamily::B, s2, p2, q2, n};
  validate_params(a);
  validate_params(b);
  auto offset = [n](double s, double p) {
    Scalar P = Scalar::from_double(p);
    return Scalar::from_double(s) +
           Scalar::from_int(n) * (Scalar::from_int(1) - Scalar::from_int(1) / P);
  };
  Scalar x1 = offset(s1, p1);
  Scalar x2 = offset(s2, p2);
  Cmp z1 = compare(x1, 0.0);
  Cmp z2 = compare(x2, 0.0);
  if (z1 != Cmp::Below && z2 != Cmp::Below)
    return {"Trivial", "point-support-span", std::nullopt, "both spaces are {0}"};

  auto exact_floor = [](const Scalar& x) -> std::optional<long long> {
    if (x.exact) {
      long long q = x.num / x.den;
      if (x.num % x.den != 0 && x.num < 0) --q;
      return q;
    }
    double fl = std::floor(x.v);
    // near-integer inexact values are ambiguous
    if (std::abs(x.v - std::nearbyint(x.v)) <= 1e-12 * std::max(1.0, std::abs(x.v)))
      return std::nullopt;
    return (long long)fl;
  };
  auto f1 = exact_floor(x1);
  auto f2 = exact_floor(x2);
  if (!f1 || !f2) return unknown("offset too close to an integer to classify");
  long long dim1 = point_space_dimension(n, p1, s1);
  long long dim2 = point_space_dimension(n, p2, s2);
  std::string dims = "dim upper = " + std::to_string(dim1) +
                     ", dim lower = " + std::to_string(dim2);
  if (*f2 < 0 && *f1 == *f2)
    return {"Equal", "point-support-span", std::nullopt, dims};
  if (*f2 < 0 && *f1 > *f2)
    return {"NotDense", "point-support-span", std::nullopt, dims};
  return unknown("inclusion reversed: " + dims);
}

long long trace_codomain_size(int n, int m) {
  if (n < 1 || m < 0) throw std::invalid_argument("trace_codomain_size: need n>=1, m>=0");
  return binomial(n + m, n);
}

Verdict kernel_window_check(int n, double d, double p, int m, double s) {
  if (!(d > 0) || !(d < n))
    throw std::invalid_argument("kernel_window_check: need 0 < d < n");
  if (!(p > 1) || !std::isfinite(p))
    throw std::invalid_argument("kernel_window_check: need 1 < p < inf");
  if (m < 0) throw std::invalid_argument("kernel_window_check: need m >= 0");
  Scalar base = (Scalar::from_int(n) - Scalar::from_double(d)) / Scalar::from_double(p);
  Scalar lo = base + Scalar::from_int(m);
  Scalar hi = base + Scalar::from_int(m + 1);
  Scalar S = Scalar::from_double(s);
  Cmp cl = compare(S, lo);
  Cmp ch = compare(S, hi);
  if (cl == Cmp::Above && ch == Cmp::Below)
    return {"Yes", "trace-kernel-window", std::pair{lo.v, hi.v},
            "kernel identity; dual identification; tilde intersection"};
  if (ch == Cmp::At)
    return {"Unknown", "", std::pair{lo.v, hi.v}, "open problem at the right endpoint"};
  return {"Unknown", "", std::pair{lo.v, hi.v}, "hypothesis fails: s outside the window"};
}

}  // namespace fractk
