#include <cmath>
#include <numbers>
#include <vector>

#include "schlicht/loewner.hpp"
#include "test_util.hpp"

using namespace schlicht;
using namespace schlicht::loewner;

namespace {

constexpr double pi = std::numbers::pi;

Complex koebe(Complex z) { return z / ((1.0 - z) * (1.0 - z)); }

const LoewnerChain& koebe_chain() {
    static const LoewnerChain chain = LoewnerChain::koebe();
    return chain;
}

// For the Koebe chain the variational integral telescopes:
// int_t^inf e^s f kf/(1 - kf) ds = (e^t f(z, t) - K(z)) / 2.
Complex variational_oracle(Complex z, double t) {
    return 0.5 * (std::exp(t) * explicit_koebe_chain(z, t) - koebe(z));
}

}  // namespace

TEST_CASE("driving functions") {
    const auto c = DrivingFunction::constant(-1.0);
    CHECK(c.is_constant());
    CHECK(c(3.0) == Complex(-1.0, 0.0));
    CHECK(c.limit() == Complex(-1.0, 0.0));

    const auto tab = DrivingFunction::tabulated({0.0, 1.0, 2.0},
                                                {std::polar(1.0, 3.0), std::polar(1.0, -3.0), std::polar(1.0, -2.5)});
    CHECK(!tab.is_constant());
    // Unwrapped: 3 -> 2 pi - 3 passes through pi, not through 0.
    CHECK(std::abs(tab(0.5) - std::polar(1.0, pi)) < 1e-14);
    for (double s : {0.1, 0.7, 1.3, 5.0}) CHECK(std::abs(std::abs(tab(s)) - 1.0) < 1e-14);
    CHECK(std::abs(tab(10.0) - tab.limit()) < 1e-15);
    CHECK(std::abs(tab.limit() - std::polar(1.0, -2.5)) < 1e-15);

    CHECK_ERROR_CODE(DrivingFunction::constant(0.5), InvalidArgument);
    CHECK_ERROR_CODE(DrivingFunction::tabulated({0.0, 0.0}, {1.0, 1.0}), InvalidArgument);
}

TEST_CASE("ode solution examples") {
    const auto& chain = koebe_chain();
    const Complex z{0.3, -0.2};
    CHECK(ode_solve(chain, z, 0.0) == z);
    CHECK(std::abs(ode_solve(chain, 0.5, 1.0) - explicit_koebe_chain(0.5, 1.0)) < 1e-8);
    CHECK(std::abs(std::exp(20.0) * ode_solve(chain, 0.5, 20.0) - 2.0) < 1e-6);

    CHECK_ERROR_CODE(ode_solve(chain, 0.96, 1.0), OutsideDomain);
    CHECK_ERROR_CODE(ode_solve(chain, 0.5, 41.0), HorizonExceeded);
}

TEST_CASE("ode agrees with the explicit chain on a polar grid") {
    const auto& chain = koebe_chain();
    double worst = 0.0;
    for (double t : {0.5, 1.0, 2.0, 5.0})
        for (int i = 1; i <= 10; ++i)
            for (int j = 0; j < 10; ++j) {
                const Complex z = std::polar(0.09 * i, 2.0 * pi * j / 10.0);
                worst = std::max(worst, std::abs(ode_solve(chain, z, t) - explicit_koebe_chain(z, t)));
            }
    CHECK(worst < 1e-8);
}

TEST_CASE("explicit chain examples") {
    const Complex z{0.2, 0.6};
    CHECK(std::abs(explicit_koebe_chain(z, 0.0) - z) < 1e-14);
    const Complex w = explicit_koebe_chain(0.5, std::log(2.0));
    CHECK(std::abs(w - (3.0 - std::sqrt(5.0)) / 2.0) < 1e-14);
    CHECK(std::abs(koebe(w) - 1.0) < 1e-13);

    // d/dt K(f(z, t)) = -K(f(z, t)).
    const double h = 1e-5;
    const Complex kp = koebe(explicit_koebe_chain(0.5, 1.0 + h));
    const Complex km = koebe(explicit_koebe_chain(0.5, 1.0 - h));
    const Complex k0 = koebe(explicit_koebe_chain(0.5, 1.0));
    CHECK(std::abs((kp - km) / (2.0 * h) + k0) < 1e-6);

    CHECK_ERROR_CODE(explicit_koebe_chain(std::polar(1.0 - 1e-12, 1.0), 0.0), RootSelectionAmbiguous);
    CHECK_ERROR_CODE(explicit_koebe_chain(1.0, 0.0), OutsideDomain);
}

TEST_CASE("trajectory invariants") {
    const auto& chain = koebe_chain();
    for (const Complex z : {Complex(0.5, 0.0), Complex(-0.8, 0.3), Complex(0.0, 0.9), Complex(0.6, -0.6)}) {
        Trajectory traj(chain, z);
        const double bound0 = std::abs(z) / ((1.0 - std::abs(z)) * (1.0 - std::abs(z)));
        for (double s = 0.25; s <= 12.0; s += 0.25) {
            const Complex f = traj.advance_to(s);
            CHECK(std::abs(f) < 1.0);
            CHECK(std::abs(f) <= std::exp(-s) * bound0 * (1.0 + 1e-12));
            const double drift = std::abs(std::exp(s) * koebe(f) - koebe(z)) / std::abs(koebe(z));
            CHECK(drift < 1e-8);
        }
        CHECK_ERROR_CODE(traj.advance_to(1.0), InvalidArgument);
    }
}

TEST_CASE("normalization of e^t f") {
    const auto& chain = koebe_chain();
    for (double t : {0.5, 2.0, 5.0}) {
        const auto f = [&](Complex z) { return std::exp(t) * ode_solve(chain, z, t); };
        CHECK(std::abs(coefficient(f, 1) - 1.0) < 1e-8);
        CHECK(std::abs(coefficient(f, 2) - (2.0 - 2.0 * std::exp(-t))) < 1e-8);
    }
}

TEST_CASE("chain limit converges with a stable constant") {
    const auto& chain = koebe_chain();
    const Complex z{0.4, 0.3};
    std::vector<double> constants;
    for (double t : {5.0, 8.0, 11.0, 15.0})
        constants.push_back(std::abs(std::exp(t) * ode_solve(chain, z, t) - koebe(z)) * std::exp(t));
    for (double c : constants) CHECK(c == doctest::Approx(constants.back()).epsilon(0.05));

    const auto limit = MapSpec::chain_limit(std::make_shared<ChainLimit>(chain, 30.0));
    CHECK(std::abs(limit(z) - koebe(z)) < 1e-9);
    const Complex kprime = (1.0 + z) / ((1.0 - z) * (1.0 - z) * (1.0 - z));
    CHECK(std::abs(limit.derivative(z) - kprime) < 1e-6);
}

TEST_CASE("h integrand") {
    const auto& chain = koebe_chain();
    CHECK(std::abs(h_integrand(chain, 0.5, 0.0) - 1.0 / 3.0) < 1e-15);

    const double d = 1e-4;
    const auto scaled = [&](double s) { return std::exp(s) * ode_solve(chain, 0.5, s); };
    const Complex fd = (scaled(1.0 + d) - scaled(1.0 - d)) / (2.0 * d);
    CHECK(std::abs(h_integrand(chain, 0.5, 1.0) - fd) < 1e-6);

    for (const Complex z : {Complex(0.3, 0.4), Complex(-0.7, 0.1)})
        for (double s : {0.5, 3.0}) {
            const auto g = [&](double u) { return std::exp(u) * ode_solve(chain, z, u); };
            CHECK(std::abs(h_integrand(chain, z, s) - (g(s + d) - g(s - d)) / (2.0 * d)) < 1e-5);
        }

    const double r10 = std::abs(h_integrand(chain, 0.5, 10.0)) * std::exp(10.0);
    const double r12 = std::abs(h_integrand(chain, 0.5, 12.0)) * std::exp(12.0);
    CHECK(r10 < 10.0);
    CHECK(r12 == doctest::Approx(r10).epsilon(0.01));
}

TEST_CASE("variational integral") {
    const auto& chain = koebe_chain();
    for (const Complex z : {Complex(0.5, 0.0), Complex(0.2, -0.7)})
        for (double t : {0.0, 1.0, 3.0}) {
            const auto v = variational_integral(chain, z, t, t + 25.0);
            CHECK(std::abs(v.value - variational_oracle(z, t)) < 1e-9);
            CHECK(v.tail_bound < 1e-8);
        }

    CHECK(std::abs(variational_integral(chain, 0.0, 1.0, 26.0).value) == 0.0);

    const auto a2 = LinearFunctional::coefficient_index(2);
    for (double t : {0.0, 1.0, 2.0}) {
        const Complex v =
            apply_functional(a2, [&](Complex z) { return variational_integral(chain, z, t, t + 25.0).value; });
        CHECK(v.real() <= 0.0);
        CHECK(std::abs(v + std::exp(-t)) < 1e-8);
    }
    const auto at = [&](double t) {
        return std::abs(
            apply_functional(a2, [&](Complex z) { return variational_integral(chain, z, t, t + 25.0).value; }));
    };
    const double r = at(2.0) / at(3.0);
    CHECK(r >= 0.8 * std::exp(1.0));
    CHECK(r <= 1.2 * std::exp(1.0));

    CHECK_ERROR_CODE(variational_integral(chain, 0.5, 1.0, 10.0), InvalidArgument);
    QuadratureOptions strict;
    strict.tail_tolerance = 1e-30;
    CHECK_ERROR_CODE(variational_integral(chain, 0.5, 1.0, 21.0, strict), TailBoundLoose);
}

TEST_CASE("support point data") {
    const auto s = SupportPointData::from_map(MapSpec::koebe(), -1.0);
    CHECK(std::abs(s.w0 + 0.25) < 1e-6);
    CHECK_ERROR_CODE(SupportPointData::from_map(MapSpec::koebe(), Complex(0.0, 1.0)), InvalidArgument);
    CHECK_ERROR_CODE(SupportPointData::from_map(MapSpec::koebe(), 0.5), InvalidArgument);
}

TEST_CASE("tail decomposition for the second coefficient") {
    const auto& chain = koebe_chain();
    const auto support = SupportPointData::from_map(MapSpec::koebe(), -1.0);
    const auto a2 = LinearFunctional::coefficient_index(2);
    std::vector<TailDecomposition> reports;
    for (double t : {2.0, 3.0, 4.0}) reports.push_back(theorem2_report(a2, chain, support, t));

    const auto& r = reports.front();
    CHECK(r.inequality_holds);
    CHECK(r.sum_real <= 1e-6);
    CHECK(std::abs(r.leading + std::exp(-2.0)) < 1e-12);
    CHECK(std::abs(r.full + std::exp(-2.0)) < 1e-9);
    for (const auto& rep : reports) {
        CHECK(rep.closure_residual < 1e-8);
        CHECK(std::abs(rep.leading + rep.second_order + rep.remainder - rep.full) < 1e-8);
        // Exact remainder vanishes for this functional; only quadrature noise remains.
        CHECK(std::abs(rep.remainder) < 1e-10);
        CHECK(std::abs(rep.remainder_direct) < 1e-10);
        CHECK(rep.tail_bound < 1e-8);
    }

    LoewnerChain wrong(DrivingFunction::constant(1.0));
    CHECK_ERROR_CODE(theorem2_report(a2, wrong, support, 2.0), InvalidArgument);
}

TEST_CASE("remainder is o(e^-t) for the third coefficient") {
    const auto& chain = koebe_chain();
    const auto support = SupportPointData::from_map(MapSpec::koebe(), -1.0);
    const auto a3 = LinearFunctional::coefficient_index(3);
    std::vector<double> magnitudes;
    for (double t : {2.0, 3.0, 4.0}) {
        const auto rep = theorem2_report(a3, chain, support, t);
        CHECK(rep.closure_residual < 1e-8);
        magnitudes.push_back(std::abs(rep.remainder));
    }
    for (std::size_t k = 0; k + 1 < magnitudes.size(); ++k) {
        REQUIRE(magnitudes[k] > 1e-8);
        CHECK(magnitudes[k + 1] / magnitudes[k] < std::exp(-1.0) * 1.5);
    }
}

TEST_CASE("sign table for the two rotated Koebe maps") {
    const auto rows = remark1_check();
    REQUIRE(rows.size() == 2);
    CHECK(std::abs(rows[0].l_of_square - 1.0) < 1e-12);
    CHECK(std::abs(rows[1].l_of_square - 1.0) < 1e-12);
    CHECK(rows[0].real_rotated == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(rows[1].real_rotated == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(rows[0].real_rotated + rows[1].real_rotated) < 1e-12);
}
