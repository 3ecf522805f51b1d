#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "schlicht/functional.hpp"
#include "schlicht/maps.hpp"
#include "schlicht/ode.hpp"

namespace schlicht::loewner {

/// Unimodular driving point kappa(s) of the radial Loewner equation.
/// Tabulated values are interpolated linearly in (unwrapped) angle and held
/// at the last sample beyond the table, which is also the limit.
class DrivingFunction {
public:
    static DrivingFunction constant(Complex kappa);
    static DrivingFunction tabulated(std::vector<double> times, std::vector<Complex> values);

    Complex operator()(double s) const;
    Complex limit() const noexcept { return limit_; }
    bool is_constant() const noexcept { return times_.empty(); }

private:
    DrivingFunction() = default;

    std::vector<double> times_;
    std::vector<double> angles_;
    Complex limit_{1.0, 0.0};
};

struct ChainControl {
    StepControl step;
    double horizon = 40.0;
    /// Integration aborts when |1 - kappa f| falls below this.
    double singular_margin = 1e-6;
};

/// f(z, t) with  df/dt = -f (1 + kappa f) / (1 - kappa f),  f(z, 0) = z.
class LoewnerChain {
public:
    explicit LoewnerChain(DrivingFunction driving, ChainControl control = {});

    /// The chain of the Koebe function z / (1 - z)^2, kappa = -1.
    static LoewnerChain koebe(ChainControl control = {});

    const DrivingFunction& driving() const noexcept { return driving_; }
    const ChainControl& control() const noexcept { return control_; }

    Complex rhs(double s, Complex f) const;
    /// Right-hand side for h = e^s f:  dh/ds = -2 h kappa f / (1 - kappa f).
    Complex scaled_rhs(double s, Complex h) const;

private:
    DrivingFunction driving_;
    ChainControl control_;
};

/// One trajectory s -> f(z, s), advanced monotonically in s. The solver
/// carries h = e^s f, which stays bounded, so f keeps its relative accuracy
/// at large s.
class Trajectory {
public:
    Trajectory(const LoewnerChain& chain, Complex z);

    /// f(z, s).
    Complex advance_to(double s);
    double time() const noexcept { return solver_.time(); }
    Complex value() const noexcept { return std::exp(-solver_.time()) * solver_.value(); }
    /// e^s f(z, s).
    Complex scaled_value() const noexcept { return solver_.value(); }
    const DormandPrince& solver() const noexcept { return solver_; }

private:
    const LoewnerChain* chain_;
    DormandPrince solver_;
};

/// f(z, t). Requires |z| <= 0.95 and t within the horizon.
Complex ode_solve(const LoewnerChain& chain, Complex z, double t);

/// Closed-form Koebe chain: the root w in the disk of K(w) = e^{-t} K(z).
Complex explicit_koebe_chain(Complex z, double t);

/// d/ds (e^s f(z, s)) = -e^s f 2 kappa f / (1 - kappa f).
Complex h_integrand(const LoewnerChain& chain, Complex z, double s);

struct VariationalIntegral {
    /// int_t^{t_max} e^s f kappa f / (1 - kappa f) ds
    Complex value;
    /// |integrand(t_max)|, which bounds the neglected tail for e^{-s} decay.
    double tail_bound;
    double t;
    double t_max;
};

struct QuadratureOptions {
    double panel_width = 1.0;
    /// When set, a tail bound above this raises TailBoundLoose.
    std::optional<double> tail_tolerance;
};

VariationalIntegral variational_integral(const LoewnerChain& chain, Complex z, double t, double t_max,
                                         const QuadratureOptions& options = {});

/// Support point with slit tip w0 = f(z0), |z0| = 1, f'(z0) = 0.
struct SupportPointData {
    MapSpec map;
    Complex z0;
    Complex w0;

    /// Validates |z0| = 1 and the vanishing derivative; w0 is the radial
    /// boundary limit of the map at z0.
    static SupportPointData from_map(MapSpec map, Complex z0, double tolerance = 1e-4);
};

/// Terms of the tail identity at one t. Values are L applied to functions
/// of z sampled on the extraction circle.
struct TailDecomposition {
    double t = 0.0;
    double t_max = 0.0;
    /// L(conj(z0) f(z)^2 e^{-t})
    Complex leading;
    /// L(int_t^inf e^s f (kappa f)^2 / (1 - kappa f) ds)
    Complex second_order;
    /// full - leading - second_order
    Complex remainder;
    /// L(int_t^inf e^s f kappa f / (1 - kappa f) ds)
    Complex full;
    /// L(int_t^inf kappa e^s f^2 ds) - leading, the same remainder computed
    /// from its own integrand.
    Complex remainder_direct;
    /// |full - leading - second_order - remainder_direct|
    double closure_residual = 0.0;
    /// Bound on L of the truncated tail beyond t_max.
    double tail_bound = 0.0;
    /// Re(leading + second_order + remainder) = Re full.
    double sum_real = 0.0;
    bool inequality_holds = false;
};

struct TailReportOptions {
    ExtractionOptions extraction;
    double t_max_offset = 25.0;
    double panel_width = 1.0;
    /// Re sum <= tolerance counts as the inequality holding.
    double tolerance = 1e-6;
};

TailDecomposition theorem2_report(const LinearFunctional& L, const LoewnerChain& chain,
                                  const SupportPointData& support, double t, const TailReportOptions& options = {});

struct SignTableRow {
    std::string map;
    Complex z0;
    Complex l_of_square;          // L(f^2)
    double real_rotated = 0.0;    // Re L(conj(z0) f^2)
};

/// L = a2 on f1 = Koebe (z0 = -1) and f2 = z / (1 + z)^2 (z0 = 1).
std::vector<SignTableRow> remark1_check(const ExtractionOptions& options = {});

/// lim e^T f(z, T), approximated at T = horizon.
class ChainLimit final : public ChainLimitSource {
public:
    ChainLimit(LoewnerChain chain, double horizon);
    Complex value(Complex z) const override;
    Complex derivative(Complex z) const override;
    std::string describe() const override;

private:
    LoewnerChain chain_;
    double horizon_;
};

}  // namespace schlicht::loewner
