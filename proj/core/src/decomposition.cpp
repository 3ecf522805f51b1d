#include "schlicht/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "schlicht/error.hpp"

namespace schlicht::decomp {

SignWord::SignWord(std::vector<int> signs) : signs_(std::move(signs)) {
    for (int s : signs_)
        if (s != 1 && s != -1) throw Error(ErrorCode::InvalidArgument, "sign word entries must be +1 or -1");
}

SignWord SignWord::from_index(std::size_t index, int length) {
    std::vector<int> signs(static_cast<std::size_t>(length));
    for (int level = 0; level < length; ++level) {
        const auto bit = (index >> (length - 1 - level)) & 1u;
        signs[static_cast<std::size_t>(level)] = bit ? -1 : 1;
    }
    return SignWord(std::move(signs));
}

std::size_t SignWord::index() const noexcept {
    std::size_t index = 0;
    for (int s : signs_) index = (index << 1) | (s < 0 ? 1u : 0u);
    return index;
}

SignWord SignWord::extended(int sign) const {
    auto signs = signs_;
    signs.push_back(sign);
    return SignWord(std::move(signs));
}

std::string SignWord::str() const {
    std::string out;
    for (int s : signs_) out.push_back(s > 0 ? '+' : '-');
    return out;
}

DecompositionTree build_full_tree(const OmittedPair& pair, int n, const TreeOptions& options) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "depth must be nonnegative");
    if (n > options.cap)
        throw Error(ErrorCode::CapExceeded,
                    "depth " + std::to_string(n) + " exceeds cap " + std::to_string(options.cap));

    DecompositionTree tree{pair, {}};
    const Complex psi0 = pair.psi_at_origin();
    tree.levels.push_back({DecompositionNode{SignWord{}, {0.0, 0.0}, {1.0, 0.0}, psi0,
                                             psi_prime(pair, {0.0, 0.0}, psi0)}});

    for (int level = 1; level <= n; ++level) {
        const auto& parents = tree.levels.back();
        std::vector<DecompositionNode> children;
        children.reserve(parents.size() * 2);
        for (const auto& parent : parents) {
            if (std::abs(parent.psi_prime_at_value.real()) >= 1.0 - options.degenerate_margin)
                throw Error(ErrorCode::DegeneratePair,
                            "psi' reaches +-1 at node " + parent.word.str() + "; coefficients would vanish");
            for (int sign : {1, -1}) {
                DecompositionNode child;
                child.word = parent.word.extended(sign);
                child.value_at_zero = parent.value_at_zero + static_cast<double>(sign) * parent.psi_at_value;
                child.derivative_at_zero =
                    parent.derivative_at_zero * (1.0 + static_cast<double>(sign) * parent.psi_prime_at_value);
                try {
                    const Complex ends[] = {parent.value_at_zero, child.value_at_zero};
                    const auto path = make_branch_path(pair, ends, options.branch);
                    child.psi_at_value = continue_psi(pair, parent.psi_at_value, path, options.branch);
                    child.psi_prime_at_value = psi_prime(pair, child.value_at_zero, child.psi_at_value);
                } catch (const Error& e) {
                    if (e.code() == ErrorCode::PathHitsBranchPoint || e.code() == ErrorCode::DerivativeSingular)
                        throw Error(ErrorCode::BranchPointCollision,
                                    "node " + child.word.str() + " lands on a branch point");
                    throw;
                }
                children.push_back(std::move(child));
            }
        }
        tree.levels.push_back(std::move(children));
    }
    return tree;
}

std::vector<DecompositionNode> build_tree(const OmittedPair& pair, int n, const TreeOptions& options) {
    return build_full_tree(pair, n, options).leaves();
}

NodeCheck check_node(const OmittedPair& pair, const DecompositionNode& node, double tolerance) {
    NodeCheck check{};
    const Complex x = node.value_at_zero;
    check.equal_distance_residual =
        std::abs(std::abs(x - pair.alpha()) - std::abs(x - pair.beta())) / (1.0 + std::abs(x));
    check.psi_prime_imag = node.psi_prime_at_value.imag();
    check.psi_prime_real = node.psi_prime_at_value.real();
    check.ok = check.equal_distance_residual <= tolerance && std::abs(check.psi_prime_imag) <= tolerance &&
               check.psi_prime_real > -1.0 && check.psi_prime_real < 1.0;
    return check;
}

LeafEvaluator::LeafEvaluator(DecompositionTree tree, TreeOptions options)
    : tree_(std::move(tree)), options_(options) {}

namespace {

// Continuation state: psi at every internal node, flattened level by level.
class TreeContinuation {
public:
    TreeContinuation(const DecompositionTree& tree, const TreeOptions& options)
        : pair_(tree.pair), options_(options), depth_(tree.depth()) {
        for (int level = 0; level < depth_; ++level)
            for (const auto& node : tree.levels[static_cast<std::size_t>(level)]) state_.push_back(node.psi_at_value);
        trial_.resize(state_.size());
        leaves_ = leaf_values(tree);
    }

    void advance(const std::function<Complex(double)>& base, double from, double to, int bisections) {
        if (try_step(base(to))) return;
        if (bisections >= options_.max_bisections)
            throw Error(ErrorCode::AmbiguousContinuation, "continuation step cannot be resolved by bisection");
        const double mid = 0.5 * (from + to);
        advance(base, from, mid, bisections + 1);
        advance(base, mid, to, bisections + 1);
    }

    const std::vector<Complex>& leaves() const noexcept { return leaves_; }

private:
    static std::vector<Complex> leaf_values(const DecompositionTree& tree) {
        std::vector<Complex> out;
        for (const auto& node : tree.leaves()) out.push_back(node.value_at_zero);
        return out;
    }

    bool try_step(Complex u) {
        values_.assign(1, u);
        std::size_t offset = 0;
        for (int level = 0; level < depth_; ++level) {
            next_.resize(values_.size() * 2);
            for (std::size_t k = 0; k < values_.size(); ++k) {
                const Complex v = values_[k];
                if (pair_.branch_distance(v) <= options_.branch.branch_tolerance * (1.0 + std::abs(v)))
                    throw Error(ErrorCode::BranchPointCollision, "continuation reaches a branch point");
                Complex chosen;
                if (!nearer_root(pair_.radicand(v), state_[offset + k], options_.refine_ratio, chosen)) return false;
                trial_[offset + k] = chosen;
                next_[2 * k] = v + chosen;
                next_[2 * k + 1] = v - chosen;
            }
            offset += values_.size();
            values_.swap(next_);
        }
        state_.swap(trial_);
        leaves_ = values_;
        return true;
    }

    const OmittedPair& pair_;
    const TreeOptions& options_;
    int depth_;
    std::vector<Complex> state_, trial_, values_, next_, leaves_;
};

std::vector<Complex> run(const DecompositionTree& tree, const TreeOptions& options,
                         const std::function<Complex(double)>& base, const std::vector<double>& taus) {
    if (std::abs(base(0.0)) > 1e-12) throw Error(ErrorCode::InvalidArgument, "base path must start at 0");
    TreeContinuation cont(tree, options);
    for (std::size_t k = 1; k < taus.size(); ++k) cont.advance(base, taus[k - 1], taus[k], 0);
    return cont.leaves();
}

}  // namespace

std::vector<Complex> LeafEvaluator::evaluate(const std::function<Complex(double)>& base) const {
    const std::size_t samples = std::max<std::size_t>(2, options_.path_samples);
    std::vector<double> taus(samples);
    for (std::size_t k = 0; k < samples; ++k) taus[k] = static_cast<double>(k) / static_cast<double>(samples - 1);
    return run(tree_, options_, base, taus);
}

std::vector<Complex> LeafEvaluator::evaluate(const BranchPath& path) const {
    const auto& points = path.waypoints();
    const std::size_t m = points.size() - 1;
    if (m == 0) return run(tree_, options_, [&](double) { return points.front(); }, {0.0});
    auto base = [&](double tau) {
        const double x = tau * static_cast<double>(m);
        const auto k = std::min<std::size_t>(static_cast<std::size_t>(x), m - 1);
        const double frac = x - static_cast<double>(k);
        if (frac == 0.0) return points[k];
        if (frac == 1.0) return points[k + 1];
        return points[k] + frac * (points[k + 1] - points[k]);
    };
    std::vector<double> taus(m + 1);
    for (std::size_t k = 0; k <= m; ++k) taus[k] = static_cast<double>(k) / static_cast<double>(m);
    return run(tree_, options_, base, taus);
}

Complex g_eval(const OmittedPair& pair, const SignWord& word, Complex w, const BranchPath& path,
               const TreeOptions& options) {
    if (std::abs(path.back() - w) > 1e-12 * (1.0 + std::abs(w)))
        throw Error(ErrorCode::InvalidArgument, "branch path must end at w");
    LeafEvaluator evaluator(build_full_tree(pair, word.size(), options), options);
    return evaluator.evaluate(path)[word.index()];
}

ConvexDecomposition::ConvexDecomposition(DecompositionTree tree, MapSpec base_map, TreeOptions options)
    : evaluator_(std::move(tree), options), base_map_(std::move(base_map)) {
    const double scale = std::ldexp(1.0, -n());
    for (const auto& leaf : evaluator_.tree().leaves()) coefficients_.push_back(scale * leaf.derivative_at_zero.real());
}

std::vector<Complex> ConvexDecomposition::raw_values(Complex z) const {
    if (!(std::abs(z) < 1.0)) throw Error(ErrorCode::OutsideDomain, "component evaluation needs |z| < 1");
    return evaluator_.evaluate([&](double tau) { return tau == 0.0 ? Complex{0.0, 0.0} : base_map_(tau * z); });
}

std::vector<Complex> ConvexDecomposition::components(Complex z) const {
    auto values = raw_values(z);
    const auto& leaves = tree().leaves();
    for (std::size_t j = 0; j < values.size(); ++j)
        values[j] = (values[j] - leaves[j].value_at_zero) / leaves[j].derivative_at_zero;
    return values;
}

Complex ConvexDecomposition::reconstruct(Complex z) const {
    const auto parts = components(z);
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < parts.size(); ++j) sum += coefficients_[j] * parts[j];
    return sum;
}

Evaluator ConvexDecomposition::component(std::size_t j) const {
    if (j >= coefficients_.size()) throw Error(ErrorCode::InvalidArgument, "component index out of range");
    return [this, j](Complex z) { return components(z)[j]; };
}

namespace {

void check_omission(const OmittedPair& pair, const MapSpec& map, const DecomposeOptions& options) {
    const std::size_t n = options.omission_samples;
    std::vector<Complex> image(n);
    for (std::size_t k = 0; k < n; ++k) {
        image[k] = map(std::polar(options.omission_radius, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                                               static_cast<double>(n)));
        if (pair.branch_distance(image[k]) <= options.omission_tolerance * (1.0 + std::abs(image[k])))
            throw Error(ErrorCode::NotOmitted, "map " + map.name() + " comes within tolerance of an omitted value");
    }
    // Argument principle on the sampled circle: a nonzero winding about alpha
    // or beta means f takes that value inside. Arcs whose argument step is
    // not resolved are bisected; the check is skipped if that fails too.
    const double r = options.omission_radius;
    const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(n);
    for (Complex target : {pair.alpha(), pair.beta()}) {
        double total = 0.0;
        bool resolved = true;
        const std::function<double(double, double, Complex, Complex, int)> arc =
            [&](double t0, double t1, Complex v0, Complex v1, int depth) -> double {
            const double step = std::arg((v1 - target) / (v0 - target));
            if (std::abs(step) < 0.25 * std::numbers::pi) return step;
            if (depth == 0) {
                resolved = false;
                return step;
            }
            const double tm = 0.5 * (t0 + t1);
            const Complex vm = map(std::polar(r, tm));
            return arc(t0, tm, v0, vm, depth - 1) + arc(tm, t1, vm, v1, depth - 1);
        };
        for (std::size_t k = 0; k < n && resolved; ++k)
            total += arc(dtheta * static_cast<double>(k), dtheta * static_cast<double>(k + 1), image[k],
                         image[(k + 1) % n], 40);
        if (resolved && std::lround(total / (2.0 * std::numbers::pi)) != 0)
            throw Error(ErrorCode::NotOmitted, "map " + map.name() + " winds around an omitted value");
    }
}

}  // namespace

ConvexDecomposition decompose(const OmittedPair& pair, const MapSpec& base_map, int n,
                              const DecomposeOptions& options) {
    check_omission(pair, base_map, options);
    auto tree = build_full_tree(pair, n, options.tree);
    for (const auto& leaf : tree.leaves()) {
        const Complex d = leaf.derivative_at_zero;
        if (!(d.real() > 0.0) || std::abs(d.imag()) > options.positivity_tolerance * std::abs(d))
            throw Error(ErrorCode::NonPositiveCoefficient,
                        "g'(0) for word " + leaf.word.str() + " is not a positive real");
    }
    return ConvexDecomposition(std::move(tree), base_map, options.tree);
}

double verify_reconstruction(const ConvexDecomposition& d, const std::vector<Complex>& samples) {
    double worst = 0.0;
    for (Complex z : samples) worst = std::max(worst, std::abs(d.base_map()(z) - d.reconstruct(z)));
    return worst;
}

double verify_disjointness(const ConvexDecomposition& d, const std::vector<Complex>& samples) {
    const std::size_t leaves = d.coefficients().size();
    if (leaves < 2) return std::numeric_limits<double>::infinity();
    std::vector<Complex> values;
    std::vector<std::size_t> labels;
    for (Complex z : samples) {
        const auto raw = d.raw_values(z);
        for (std::size_t j = 0; j < raw.size(); ++j) {
            values.push_back(raw[j]);
            labels.push_back(j);
        }
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < values.size(); ++a)
        for (std::size_t b = a + 1; b < values.size(); ++b)
            if (labels[a] != labels[b]) best = std::min(best, std::abs(values[a] - values[b]));
    return best;
}

Complex fixed_point(const OmittedPair& pair, Complex w, double tolerance) {
    const Complex denominator = 2.0 * w - pair.alpha() - pair.beta();
    if (std::abs(denominator) <= tolerance * (1.0 + std::abs(w) + pair.radius()))
        throw Error(ErrorCode::PoleAtMidpoint, "2w equals alpha + beta");
    return (w * w - pair.alpha() * pair.beta()) / denominator;
}

double verify_fixed_point(const OmittedPair& pair, Complex w, double tolerance) {
    const Complex g = fixed_point(pair, w, tolerance);
    return std::abs((g - w) * (g - w) - (g - pair.alpha()) * (g - pair.beta()));
}

}  // namespace schlicht::decomp
