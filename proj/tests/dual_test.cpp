#include <doctest.h>

#include <cmath>
#include <string>

#include <Eigen/LU>

#include "oracles.hpp"
#include "slsq/bounds.hpp"
#include "slsq/constructors.hpp"
#include "slsq/design.hpp"
#include "slsq/dual.hpp"
#include "slsq/error.hpp"

using namespace slsq;

namespace {

Layout class_design(int s) { return load_layout(std::string(SLSQ_FIXTURE_DIR) + "/class_s" + std::to_string(s)); }

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("dual") {
  TEST_CASE("class fixtures are in the analysed class") {
    for (int s = 3; s <= 5; ++s) {
      CAPTURE(s);
      const Layout l = class_design(s);
      CHECK(is_latinized(l));
      CHECK(in_dual_class(l));
      const auto d = dual_concurrence(l);
      CHECK(d.blocks() == s * s);
      CHECK(d.concurrence.diagonal().minCoeff() == s);
      // one pair of columns sharing two treatments per row of each
      // off-diagonal submatrix
      CHECK(d.q.sum() == s * s * (s - 1));
    }
  }

  TEST_CASE("every identity holds on the class fixtures") {
    for (int s = 3; s <= 5; ++s) {
      CAPTURE(s);
      const auto rep = verify_appendix(class_design(s));
      CHECK(rep.all_passed());
      CHECK(rep.checks.size() >= 12);
      for (const auto& c : rep.checks) {
        CAPTURE(c.name);
        CHECK(c.passed);
        CHECK(c.residual <= c.tolerance);
      }
      CHECK(std::abs(rep.e_col_eigen - oracle::e_col(class_design(s))) < 1e-9);
      CHECK(std::abs(rep.e_col_trace - rep.e_col_eigen) < 1e-9);
      CHECK(rep.trace_q_star >= -1e-9);
      CHECK(std::abs(rep.w_col.bound - w_col(s)) < 1e-9);
      CHECK(rep.e_col_eigen <= rep.w_col.bound + 1e-9);
    }
  }

  TEST_CASE("projections") {
    for (int s = 3; s <= 6; ++s) {
      const auto p = projections(s);
      const auto n = s * s;
      CHECK(max_abs(p.p0 - Eigen::MatrixXd::Constant(n, n, 1.0 / n)) < 1e-15);
      CHECK(max_abs(p.p1 * p.p1 - p.p1) < 1e-12);
      CHECK(max_abs(p.p2 * p.p2 - p.p2) < 1e-12);
      CHECK(max_abs(p.p1 * p.p2 - p.p0) < 1e-12);
      CHECK(std::abs(p.p1.trace() - s) < 1e-12);
      CHECK(std::abs(p.p2.trace() - s) < 1e-12);
    }
  }

  TEST_CASE("two routes to A*") {
    for (int s = 3; s <= 5; ++s) {
      const auto d = dual_concurrence(class_design(s));
      const Eigen::MatrixXd a = a_d_star(d);
      CHECK(max_abs(a - a_d_star_from_concurrence(d)) < 1e-12);
      CHECK(max_abs(a - a.transpose()) < 1e-15);
      CHECK(a.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("closed-form A** is the inverse of A* + P0") {
    for (int s = 3; s <= 5; ++s) {
      CAPTURE(s);
      const auto d = dual_concurrence(class_design(s));
      const auto p = projections(s);
      const Eigen::MatrixXd direct = (a_d_star(d) + p.p0).fullPivLu().inverse();
      const Eigen::MatrixXd closed = a_d_star_star(d);
      CHECK(max_abs(closed - direct) < 1e-9);

      // with the P0 coefficient -s^2 (s-1)^2 the expression falls short
      // of the inverse by exactly P0
      const double sd = s;
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(s * s, s * s);
      const Eigen::MatrixXd alt = (sd * sd * sd * (sd - 1) * id - sd * sd * (sd - 1) * (sd - 1) * p.p0 -
                                   sd * sd * (sd - 1) * (p.p1 + p.p2) + sd * sd * q_star(d)) /
                                  (sd * sd * sd * (sd - 2));
      CHECK(max_abs(alt - (direct - p.p0)) < 1e-9);
    }
  }

  TEST_CASE("trace identities") {
    for (int s = 3; s <= 5; ++s) {
      const auto d = dual_concurrence(class_design(s));
      CHECK(std::abs(q_star(d).trace() - q_star_trace_identity(d)) < 1e-9);
      CHECK(std::abs(e_col_via_trace(d) - oracle::e_col(class_design(s))) < 1e-9);
      const auto w = w_col_derivation_check(d);
      CHECK(std::abs(w.bound - w.w_col) < 1e-9);
      CHECK(std::abs(w.gap - (w.bound - w.e_col)) < 1e-15);
      CHECK(w.gap >= -1e-9);
      const Eigen::MatrixXd no_q = a_d_star_star_without_q_star(d);
      CHECK(std::abs((static_cast<double>(s) * s - 1) / (no_q - projections(s).p0).trace() - w_col(s)) < 1e-9);
    }
  }

  TEST_CASE("outside the class") {
    CHECK_FALSE(in_dual_class(figure_layout("fig2a")));
    CHECK_THROWS_AS((void)dual_concurrence(figure_layout("fig2a")), DomainError);
    // cyclic start: columns of different replicates coincide as sets
    const Layout cyclic = cyclic_start_layout({4, 4, 4});
    CHECK(is_latinized(cyclic));
    CHECK_FALSE(in_dual_class(cyclic));
    CHECK_THROWS_AS((void)dual_concurrence(cyclic), OutsideClassError);
    CHECK_THROWS_AS((void)verify_appendix(cyclic), OutsideClassError);
    // break latinization of a class design
    Layout broken = class_design(3);
    broken.swap_cells(0, 0, 0, 0, 1);
    CHECK_FALSE(is_latinized(broken));
    CHECK_THROWS_AS((void)dual_concurrence(broken), ValidationError);
  }
}
