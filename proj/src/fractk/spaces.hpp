#pragma once

#include <optional>
#include <string>
#include <utility>

namespace fractk {

// Function-space scale: B (Besov), F (Triebel-Lizorkin), H (Bessel
// potential, identified with F at q = 2, 1 < p < infinity).
enum class SpaceFamily { B, F, H };

struct SpaceParams {
  SpaceFamily family = SpaceFamily::H;
  double s = 0;
  double p = 2;
  double q = 2;
  int n = 1;
};

enum class SetKind {
  DSet,
  PointSet,
  Hyperplane,
  SnowflakeBoundary,
  ThickDomainClosure,
  Custom,
};

struct SetDescriptor {
  SetKind kind = SetKind::DSet;
  double d = 0;
  bool compact = true;
  bool boundary_measure_zero = false;  // domains only
  bool thick = false;                  // domains only
  bool smooth = false;                 // smooth-manifold structure (with integer d)
};

// Decision record. `answer` is one of a small per-question vocabulary; any
// decided (non-Unknown, non-Borderline) answer carries the tag of the result
// that justifies it.
struct Verdict {
  std::string answer;
  std::string theorem;
  std::optional<std::pair<double, double>> window;
  std::string reason;

  bool decided() const { return answer != "Unknown" && answer != "Borderline"; }
};

double conjugate_exponent(double p);

// Is the subspace of distributions supported on the set trivial?
// Answers: Null / NonNull / Borderline / Unknown.
Verdict nullity_classify(const SpaceParams& sp, const SetDescriptor& set);

// Does the closure of test functions on the domain equal the
// supported-in-closure subspace? Answers: Yes / Unknown (never No).
Verdict q1_equality_decide(const SetDescriptor& domain, const SpaceParams& sp);

// Open smoothness interval in which supported subspaces on a d-set are dense
// in one another, for derivative order m.
std::pair<double, double> density_window(int n, double d, double p, int m);

// Is the s1-supported subspace dense in the s2 one (s1 >= s2)?
// Answers: Dense / NotDense / Unknown.
Verdict density_decide(double s1, double s2, const SpaceParams& sp, const SetDescriptor& set);

// Dimension of the subspace supported at a single point: number of
// multi-indices beta with |beta| < -s - n(1 - 1/p).
long long point_space_dimension(int n, double p, double s);

// Point-set (d = 0) density trichotomy. Answers: Trivial / Equal / NotDense /
// Unknown.
Verdict d0_density_decide(double s1, double p1, double q1, double s2, double p2, double q2,
                          int n);

// Number of distinct partial derivatives of order <= m: binomial(n+m, n).
long long trace_codomain_size(int n, int m);

// Whether s sits strictly inside the trace-kernel window
// ((n-d)/p + m, (n-d)/p + m + 1). Answers: Yes / Unknown.
Verdict kernel_window_check(int n, double d, double p, int m, double s);

}  // namespace fractk
