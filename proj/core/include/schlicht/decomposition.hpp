#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "schlicht/branch.hpp"
#include "schlicht/maps.hpp"

namespace schlicht::decomp {

/// Choice of w + psi (+1) or w - psi (-1) at each level, level 1 first.
/// Words of length n are enumerated in binary-counter order with level 1 as
/// the most significant bit and +1 as bit 0.
class SignWord {
public:
    SignWord() = default;
    explicit SignWord(std::vector<int> signs);

    static SignWord from_index(std::size_t index, int length);
    std::size_t index() const noexcept;

    int size() const noexcept { return static_cast<int>(signs_.size()); }
    int operator[](int level) const { return signs_[static_cast<std::size_t>(level)]; }
    const std::vector<int>& signs() const noexcept { return signs_; }
    SignWord extended(int sign) const;
    std::string str() const;

private:
    std::vector<int> signs_;
};

struct DecompositionNode {
    SignWord word;
    /// X = g_word(0).
    Complex value_at_zero;
    /// g_word'(0).
    Complex derivative_at_zero;
    /// psi(X) on the branch continued from psi(0) through the ancestors.
    Complex psi_at_value;
    /// psi'(X); real and inside (-1, 1) for valid pairs.
    Complex psi_prime_at_value;
};

struct TreeOptions {
    int cap = 12;
    BranchOptions branch;
    /// Nodes with |psi'(X)| >= 1 - margin would produce vanishing
    /// coefficients and are rejected as DegeneratePair.
    double degenerate_margin = 1e-12;
    /// Samples of the base path before adaptive bisection.
    std::size_t path_samples = 256;
    /// Continuation step is accepted when the chosen root lies within
    /// refine_ratio * |root| of the previous value.
    double refine_ratio = 0.25;
    int max_bisections = 48;
};

/// All levels of the recursion; levels[0] is the root (empty word, X = 0,
/// derivative 1) and levels[n] holds the 2^n leaves in SignWord order.
struct DecompositionTree {
    OmittedPair pair;
    std::vector<std::vector<DecompositionNode>> levels;

    int depth() const noexcept { return static_cast<int>(levels.size()) - 1; }
    const std::vector<DecompositionNode>& leaves() const { return levels.back(); }
};

DecompositionTree build_full_tree(const OmittedPair& pair, int n, const TreeOptions& options = {});

/// Leaves of the recursion at depth n.
std::vector<DecompositionNode> build_tree(const OmittedPair& pair, int n, const TreeOptions& options = {});

struct NodeCheck {
    double equal_distance_residual;  // | |X-a| - |X-b| | / (1 + |X|)
    double psi_prime_imag;
    double psi_prime_real;
    bool ok;
};

NodeCheck check_node(const OmittedPair& pair, const DecompositionNode& node, double tolerance = 1e-9);

/// Evaluates every leaf g_word at the end of a base path by continuing all
/// branches of the tree simultaneously from tau = 0 (where base(0) = 0) to
/// tau = 1, bisecting steps where the nearer-root rule is not trusted.
class LeafEvaluator {
public:
    LeafEvaluator(DecompositionTree tree, TreeOptions options = {});

    const DecompositionTree& tree() const noexcept { return tree_; }

    std::vector<Complex> evaluate(const std::function<Complex(double)>& base) const;

    /// Along a polyline from 0 (linear interpolation between waypoints).
    std::vector<Complex> evaluate(const BranchPath& path) const;

private:
    DecompositionTree tree_;
    TreeOptions options_;
};

/// g_word(w), continued along `path` from 0 to w.
Complex g_eval(const OmittedPair& pair, const SignWord& word, Complex w, const BranchPath& path,
               const TreeOptions& options = {});

struct DecomposeOptions {
    TreeOptions tree;
    /// Omission spot check on this many points at radius 0.999.
    std::size_t omission_samples = 2048;
    double omission_radius = 0.999;
    double omission_tolerance = 1e-6;
    /// Relative tolerance on Im g'(0) and on g'(0) > 0.
    double positivity_tolerance = 1e-9;
};

/// f = sum_j alpha_j f_j with alpha_j = 2^{-n} g_j'(0) and
/// f_j = (g_j o f - g_j(0)) / g_j'(0).
class ConvexDecomposition {
public:
    ConvexDecomposition(DecompositionTree tree, MapSpec base_map, TreeOptions options);

    int n() const noexcept { return evaluator_.tree().depth(); }
    const OmittedPair& pair() const noexcept { return evaluator_.tree().pair; }
    const MapSpec& base_map() const noexcept { return base_map_; }
    const DecompositionTree& tree() const noexcept { return evaluator_.tree(); }
    const std::vector<double>& coefficients() const noexcept { return coefficients_; }

    /// g_j(f(z)) for every leaf j.
    std::vector<Complex> raw_values(Complex z) const;
    /// f_j(z) for every leaf j.
    std::vector<Complex> components(Complex z) const;
    /// sum_j alpha_j f_j(z).
    Complex reconstruct(Complex z) const;
    Evaluator component(std::size_t j) const;

private:
    LeafEvaluator evaluator_;
    MapSpec base_map_;
    std::vector<double> coefficients_;
};

ConvexDecomposition decompose(const OmittedPair& pair, const MapSpec& base_map, int n,
                              const DecomposeOptions& options = {});

/// max over samples of |f(z) - sum_j alpha_j f_j(z)|.
double verify_reconstruction(const ConvexDecomposition& d, const std::vector<Complex>& samples);

/// Minimum distance between values of distinct leaves g_j o f over all pairs
/// of samples; +infinity for a single leaf.
double verify_disjointness(const ConvexDecomposition& d, const std::vector<Complex>& samples);

/// (w^2 - alpha beta) / (2w - alpha - beta). Throws PoleAtMidpoint.
Complex fixed_point(const OmittedPair& pair, Complex w, double tolerance = 1e-12);

/// |(g - w)^2 - (g - alpha)(g - beta)| at g = fixed_point(pair, w).
double verify_fixed_point(const OmittedPair& pair, Complex w, double tolerance = 1e-12);

}  // namespace schlicht::decomp
