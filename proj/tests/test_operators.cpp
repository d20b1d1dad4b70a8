#include <cmath>
#include <vector>

#include "doctest.h"
#include "ortho/errors.hpp"
#include "ortho/operators.hpp"
#include "ortho/orthogonality.hpp"

using namespace ortho;

namespace {

// rows (1,2) and (0,1), stored as columns
LinearOperator shear(const NormedSpace& dom, const NormedSpace& cod) {
  return {dom, cod, {1, 0, 2, 1}};
}

LinearOperator rotation(double th) {
  NormedSpace e2 = NormedSpace::euclidean(2);
  return {e2, e2, {std::cos(th), std::sin(th), -std::sin(th), std::cos(th)}};
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("construction and apply") {
  NormedSpace l1 = NormedSpace::lp(1, 2);
  LinearOperator t = shear(l1, l1);
  CHECK(t.rows() == 2);
  CHECK(t.cols() == 2);
  CHECK(t.entry(0, 1) == 2.0);
  CHECK(t.apply(Vector{1, 0}).linf_dist(Vector{1, 0}) == 0.0);
  CHECK(t.apply(Vector{0, 1}).linf_dist(Vector{2, 1}) == 0.0);
  CHECK(t.apply(Vector{1, 1}).linf_dist(Vector{3, 1}) == 0.0);
  CHECK_THROWS_AS(t.apply(Vector{1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(LinearOperator(l1, l1, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(LinearOperator(l1, l1, {1, 0, 2, kInf}), std::invalid_argument);
  CHECK_THROWS_AS(LinearOperator::diagonal(l1, Vector{1, 2, 3}), std::invalid_argument);
}

TEST_CASE("operator norm is the largest column norm on l_1 domains") {
  NormedSpace l1 = NormedSpace::lp(1, 2);
  auto n = operator_norm(shear(l1, l1));
  CHECK(n.value == 3.0);
  CHECK(n.method == NormEstimate::Method::Exact);
  auto n2 = operator_norm(shear(l1, NormedSpace::euclidean(2)));
  CHECK(n2.value == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  CHECK(n2.method == NormEstimate::Method::Exact);
}

TEST_CASE("operator norm by sign enumeration on sup-norm domains") {
  NormedSpace li = NormedSpace::lp(kInf, 2);
  auto n = operator_norm(shear(li, li));
  CHECK(n.value == 3.0);
  CHECK(n.method == NormEstimate::Method::Exact);
  auto n2 = operator_norm(shear(li, NormedSpace::lp(1, 2)));
  CHECK(n2.value == 4.0);
  CHECK(n2.method == NormEstimate::Method::Exact);
}

TEST_CASE("operator norm over polygon vertices") {
  NormedSpace hex =
      NormedSpace::polyhedral(2, {Vector{1, 0}, Vector{0, 1}, Vector{1, 1}});
  auto n = operator_norm(LinearOperator::identity(hex));
  CHECK(n.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(n.method == NormEstimate::Method::Exact);
}

TEST_CASE("operator norm and lower bound via singular values") {
  NormedSpace e2 = NormedSpace::euclidean(2);
  auto n = operator_norm(shear(e2, e2));
  CHECK(n.value == doctest::Approx(2.4142135623730949).epsilon(1e-14));
  CHECK(n.method == NormEstimate::Method::Exact);
  auto lb = lower_bound(shear(e2, e2));
  CHECK(lb.value == doctest::Approx(0.41421356237309509).epsilon(1e-14));
  CHECK(lb.method == NormEstimate::Method::Exact);
  CHECK(operator_norm(LinearOperator::diagonal(e2, Vector{1, 2})).value == 2.0);
  CHECK(lower_bound(LinearOperator::diagonal(e2, Vector{1, 2})).value == 1.0);
}

TEST_CASE("sampled norm estimates converge on smooth planes") {
  NormedSpace l3 = NormedSpace::lp(3, 2);
  auto n = operator_norm(shear(l3, l3), 5);
  CHECK(n.method == NormEstimate::Method::Sampled);
  CHECK(n.value == doctest::Approx(2.4882251412993748).epsilon(1e-6));
  CHECK(n.value <= 2.4882251412993748 + 1e-9);
  auto id = operator_norm(LinearOperator::identity(l3), 5);
  CHECK(id.value == 1.0);
  auto idlb = lower_bound(LinearOperator::identity(l3), 5);
  CHECK(idlb.value == 1.0);
  CHECK(idlb.method == NormEstimate::Method::Sampled);
}

TEST_CASE("sampled lower bound finds the kink minimizer") {
  NormedSpace l1 = NormedSpace::lp(1, 2);
  auto lb = lower_bound(shear(l1, l1), 5);
  CHECK(lb.method == NormEstimate::Method::Sampled);
  CHECK(lb.value >= 1.0 / 3 - 1e-12);
  CHECK(lb.value == doctest::Approx(1.0 / 3).epsilon(5e-3));
}

TEST_CASE("lower bound is exactly zero without full rank") {
  NormedSpace e2 = NormedSpace::euclidean(2);
  auto lb = lower_bound(LinearOperator::diagonal(e2, Vector{1, 0}));
  CHECK(lb.value == 0.0);
  CHECK(lb.method == NormEstimate::Method::Exact);
  // a map from three coordinates to two always has a kernel
  LinearOperator wide(NormedSpace::lp(1, 3), e2, {1, 0, 0, 1, 1, 1});
  CHECK(lower_bound(wide).value == 0.0);
  CHECK(lower_bound(wide).method == NormEstimate::Method::Exact);
}

TEST_CASE("isometry deviation profile") {
  NormedSpace e2 = NormedSpace::euclidean(2);
  OperatorProfile p = isometry_deviation(LinearOperator::diagonal(e2, Vector{1, 2}));
  CHECK(p.scale == 2.0);
  CHECK(p.delta1 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p.delta2 == 0.0);
  CHECK(p.injective);

  OperatorProfile q = isometry_deviation(LinearOperator::diagonal(e2, Vector{1, 0}));
  CHECK_FALSE(q.injective);
  CHECK(q.delta1 == 1.0);

  OperatorProfile r = isometry_deviation(rotation(0.7));
  CHECK(r.delta1 <= 1e-9);
  CHECK(r.injective);

  CHECK_THROWS_AS(isometry_deviation(LinearOperator(e2, e2, {0, 0, 0, 0})),
                  std::invalid_argument);
}

TEST_CASE("preservation constant of the scaling family") {
  NormedSpace e2 = NormedSpace::euclidean(2);
  for (double s : {1.5, 2.0, 5.0}) {
    double closed = (s * s - 1.0) / (s * s + 1.0);
    auto rep = preservation_constant(LinearOperator::diagonal(e2, Vector{1, s}),
                                     OrthoRelation::birkhoff(), 2, 400);
    CHECK(rep.eta_hat <= closed + 1e-9);
    CHECK(rep.eta_hat == doctest::Approx(closed).epsilon(2e-2));
    CHECK(rep.samples_used == 400);
    CHECK(rep.skipped_degenerate == 0);
    CHECK(holds(e2, OrthoRelation::birkhoff(), rep.worst_pair.first, rep.worst_pair.second));
  }
  auto id = preservation_constant(LinearOperator::identity(e2), OrthoRelation::birkhoff(), 2,
                                  100);
  CHECK(id.eta_hat <= 1e-7);
}

TEST_CASE("rotations preserve the symmetric relation") {
  auto rep = preservation_constant(rotation(0.9), OrthoRelation::roberts(), 3, 10);
  CHECK(rep.eta_hat <= 1e-9);
}

TEST_CASE("identity on the l_1 plane preserves but does not reverse") {
  NormedSpace l1 = NormedSpace::lp(1, 2);
  LinearOperator id = LinearOperator::identity(l1);
  auto fwd = preservation_constant(id, OrthoRelation::birkhoff(), 11, 200);
  CHECK(fwd.eta_hat <= 1e-6);
  auto rev = reversal_constant(id, OrthoRelation::birkhoff(), 11, 200);
  CHECK(rev.eta_hat > 0.3);
  CHECK(rev.eta_hat < 1.0);
  CHECK(rev.direction == Direction::Reverse);
}

TEST_CASE("local constant at the diagonal point of the scaling map") {
  NormedSpace e2 = NormedSpace::euclidean(2);
  LinearOperator t = LinearOperator::diagonal(e2, Vector{1, 2});
  double is2 = 0.7071067811865475;
  auto rep = local_preservation_constant(t, OrthoRelation::birkhoff(), Vector{is2, is2}, 4,
                                         50);
  CHECK(rep.eta_hat == doctest::Approx(0.6).epsilon(1e-9));
  auto axis = local_preservation_constant(t, OrthoRelation::birkhoff(), Vector{1, 0}, 4, 50);
  CHECK(axis.eta_hat <= 1e-9);
}

TEST_CASE("kernel witnesses drive the measured parameter to one") {
  NormedSpace l1 = NormedSpace::lp(1, 3);
  LinearOperator t = LinearOperator::diagonal(l1, Vector{1, 0, 1});
  Vector x{1, 0, 0}, y{0.5, 0.5, 0};
  REQUIRE(holds(l1, OrthoRelation::birkhoff(), x, y));
  CHECK(dragomir_eps(l1, t.apply(x), t.apply(y)) == 1.0);
}

TEST_CASE("all pairs degenerate raises") {
  NormedSpace e2 = NormedSpace::euclidean(2);
  LinearOperator t = LinearOperator::diagonal(e2, Vector{1, 0});
  CHECK_THROWS_AS(
      local_preservation_constant(t, OrthoRelation::birkhoff(), Vector{0, 1}, 4, 10),
      degenerate_error);
}

TEST_CASE("eta bound family values") {
  CHECK(isometry_eta_bound(OrthoRelation::birkhoff(), 0.0, 0.0) == 0.0);
  CHECK(isometry_eta_bound(OrthoRelation::roberts(), 0.0, 0.0) == 0.0);
  CHECK(isometry_eta_bound(OrthoRelation::dragomir(0.3), 0.0, 0.0) ==
        doctest::Approx(0.3).epsilon(1e-12));
  CHECK(isometry_eta_bound(OrthoRelation::dragomir(0.1), 0.1, 0.05) ==
        doctest::Approx(0.52216191092848763).epsilon(1e-14));
  CHECK(isometry_eta_bound(OrthoRelation::chmielinski(0.1), 0.2, 0.0) ==
        doctest::Approx(0.76837490849194168).epsilon(1e-14));
  CHECK(isometry_eta_bound(OrthoRelation::chmielinski(0.0), 0.1, 0.0) ==
        isometry_eta_bound(OrthoRelation::birkhoff(), 0.1, 0.0));

  CHECK(isometry_eta_bound(OrthoRelation::roberts(), 0.2, 0.0) >
        isometry_eta_bound(OrthoRelation::roberts(), 0.1, 0.0));
  CHECK(isometry_eta_bound(OrthoRelation::dragomir(0.3), 0.1, 0.0) >
        isometry_eta_bound(OrthoRelation::dragomir(0.2), 0.1, 0.0));

  CHECK_THROWS_AS(isometry_eta_bound(OrthoRelation::chmielinski(0.5), 0.1, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(isometry_eta_bound(OrthoRelation::isosceles(), 0.1, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(isometry_eta_bound(OrthoRelation::birkhoff(), 1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(isometry_eta_bound(OrthoRelation::birkhoff(), 0.1, -0.1),
                  std::invalid_argument);
}

TEST_CASE("perturbed bound values and degeneracy") {
  CHECK(perturbed_eta_bound(OrthoRelation::roberts(), 0.05, 0.05, 0.5) ==
        doctest::Approx(0.96290481829226038).epsilon(1e-14));
  CHECK(perturbed_eta_bound(OrthoRelation::dragomir(0.1), 0.1, 0.05, 0.0) ==
        isometry_eta_bound(OrthoRelation::dragomir(0.1), 0.1, 0.05));
  CHECK(perturbed_eta_bound(OrthoRelation::roberts(), 0.05, 0.0, 0.1) >
        perturbed_eta_bound(OrthoRelation::roberts(), 0.05, 0.0, 0.05));
  CHECK_THROWS_AS(perturbed_eta_bound(OrthoRelation::roberts(), 0.05, 0.0, 0.95),
                  degenerate_bound_error);
  CHECK_THROWS_AS(perturbed_eta_bound(OrthoRelation::roberts(), 0.05, 0.0, -0.1),
                  std::invalid_argument);
}

TEST_CASE("floor function values") {
  CHECK(bounded_below_floor(0.0) == doctest::Approx(1.0 / 15).epsilon(1e-15));
  CHECK(bounded_below_floor(0.8) == doctest::Approx(0.043478260869565216).epsilon(1e-14));
  CHECK(bounded_below_floor(0.6) == doctest::Approx(0.055555555555555559).epsilon(1e-14));
  CHECK(bounded_below_floor(1.0) == 0.0);
  CHECK(bounded_below_floor(0.2) > bounded_below_floor(0.4));
  CHECK_THROWS_AS(bounded_below_floor(1.2), std::invalid_argument);
  CHECK_THROWS_AS(bounded_below_floor(-0.1), std::invalid_argument);
}

TEST_CASE("floor check passes well-conditioned maps") {
  auto rot = verify_floor(rotation(0.7), 0.0);
  CHECK(rot.pass);
  CHECK(rot.worst_ratio == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rot.floor == doctest::Approx(1.0 / 15).epsilon(1e-15));

  NormedSpace e2 = NormedSpace::euclidean(2);
  auto d = verify_floor(LinearOperator::diagonal(e2, Vector{1, 2}), 0.6);
  CHECK(d.pass);
  CHECK(d.worst_ratio == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("floor check flags kernel directions and bad conditioning") {
  NormedSpace e2 = NormedSpace::euclidean(2);
  auto k = verify_floor(LinearOperator::diagonal(e2, Vector{1, 0}), 0.5);
  CHECK_FALSE(k.pass);
  CHECK(k.worst_ratio == 0.0);

  NormedSpace l1 = NormedSpace::lp(1, 2);
  auto k2 = verify_floor(LinearOperator::diagonal(l1, Vector{1, 0}), 0.5);
  CHECK_FALSE(k2.pass);
  CHECK(k2.worst_ratio == 0.0);

  auto bad = verify_floor(LinearOperator::diagonal(e2, Vector{1, 0.01}), 0.5);
  CHECK_FALSE(bad.pass);
  CHECK(bad.worst_ratio == doctest::Approx(0.01).epsilon(1e-6));
}

}  // TEST_SUITE
