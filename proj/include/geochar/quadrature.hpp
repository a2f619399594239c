/**
 * @file quadrature.hpp
 * @brief Gauss-Legendre rules, a deterministic parallel map, and a globally adaptive 2D integrator.
 */
#pragma once

#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

namespace geochar {

/** Worker cap; results never depend on it. */
struct Exec {
    unsigned threads = 1;
};

/** out[i] = f(i), computed on up to exec.threads workers in contiguous blocks. */
template <class F>
auto parallel_map(std::size_t n, F&& f, Exec exec = {}) {
    using R = decltype(f(std::size_t{0}));
    std::vector<R> out(n);
    const unsigned workers = std::max(1u, std::min<unsigned>(exec.threads, static_cast<unsigned>(n)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
        return out;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        pool.emplace_back([&, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) out[i] = f(i);
        });
    }
    return out;
}

struct GaussRule {
    std::vector<double> nodes;    ///< on [-1, 1], ascending
    std::vector<double> weights;
};

/** n-point Gauss-Legendre rule, cached. */
inline const GaussRule& gauss_legendre(unsigned n) {
    static std::mutex mu;
    static std::map<unsigned, GaussRule> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussRule rule;
    const auto zeros = boost::math::legendre_p_zeros<double>(static_cast<int>(n));  // nonnegative half
    for (double x : zeros) {
        const double dp = boost::math::legendre_p_prime<double>(static_cast<int>(n), x);
        const double w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes.push_back(x);
        rule.weights.push_back(w);
        if (x != 0) {
            rule.nodes.push_back(-x);
            rule.weights.push_back(w);
        }
    }
    std::vector<std::size_t> idx(rule.nodes.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return rule.nodes[a] < rule.nodes[b]; });
    GaussRule sorted;
    for (auto i : idx) {
        sorted.nodes.push_back(rule.nodes[i]);
        sorted.weights.push_back(rule.weights[i]);
    }
    return cache.emplace(n, std::move(sorted)).first->second;
}

/** Composite Gauss-Legendre on [a, b] with `panels` equal panels. */
template <class F>
auto integrate_1d(F&& f, double a, double b, unsigned order = 20, unsigned panels = 1) {
    using R = decltype(f(a));
    const GaussRule& g = gauss_legendre(order);
    R sum{};
    const double h = (b - a) / panels;
    for (unsigned p = 0; p < panels; ++p) {
        const double lo = a + p * h, mid = lo + h / 2;
        for (std::size_t i = 0; i < g.nodes.size(); ++i) sum += g.weights[i] * (h / 2) * f(mid + (h / 2) * g.nodes[i]);
    }
    return sum;
}

struct Box {
    double a0, a1, b0, b1;
    double area() const { return (a1 - a0) * (b1 - b0); }
};

template <class T>
struct Quad2Result {
    T value{};
    double error = 0;
    bool converged = false;
    std::size_t cells = 0;
};

struct Quad2Options {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    unsigned order = 12;      ///< high rule; the low rule has order - 4 points
    std::size_t max_cells = 4096;
    unsigned initial_a = 4, initial_b = 4;
    Exec exec{};
};

namespace detail {

template <class T, class F>
std::pair<T, double> tensor_estimate(F& f, const Box& c, unsigned order) {
    const GaussRule& hi = gauss_legendre(order);
    const GaussRule& lo = gauss_legendre(order - 4);
    const double ha = (c.a1 - c.a0) / 2, ma = (c.a0 + c.a1) / 2;
    const double hb = (c.b1 - c.b0) / 2, mb = (c.b0 + c.b1) / 2;
    T qh{}, ql{};
    for (std::size_t i = 0; i < hi.nodes.size(); ++i)
        for (std::size_t j = 0; j < hi.nodes.size(); ++j)
            qh += hi.weights[i] * hi.weights[j] * f(ma + ha * hi.nodes[i], mb + hb * hi.nodes[j]);
    for (std::size_t i = 0; i < lo.nodes.size(); ++i)
        for (std::size_t j = 0; j < lo.nodes.size(); ++j)
            ql += lo.weights[i] * lo.weights[j] * f(ma + ha * lo.nodes[i], mb + hb * lo.nodes[j]);
    qh *= ha * hb;
    ql *= ha * hb;
    return {qh, std::abs(qh - ql)};
}

}  // namespace detail

/**
 * @brief Adaptive tensor Gauss-Legendre over a rectangle.
 *
 * Cells whose error exceeds their share of the tolerance are split in four.
 * Summation runs over cells in a fixed order, so the result is independent of
 * the thread count.
 */
template <class T, class F>
Quad2Result<T> adaptive_2d(F&& f, const Box& box, const Quad2Options& opt = {}) {
    struct Cell {
        Box box;
        T value;
        double error;
    };
    auto eval = [&](const std::vector<Box>& boxes) {
        auto res = parallel_map(boxes.size(), [&](std::size_t i) { return detail::tensor_estimate<T>(f, boxes[i], opt.order); }, opt.exec);
        std::vector<Cell> cells;
        for (std::size_t i = 0; i < boxes.size(); ++i) cells.push_back({boxes[i], res[i].first, res[i].second});
        return cells;
    };

    std::vector<Box> init;
    const double da = (box.a1 - box.a0) / opt.initial_a, db = (box.b1 - box.b0) / opt.initial_b;
    for (unsigned i = 0; i < opt.initial_a; ++i)
        for (unsigned j = 0; j < opt.initial_b; ++j)
            init.push_back({box.a0 + i * da, box.a0 + (i + 1) * da, box.b0 + j * db, box.b0 + (j + 1) * db});
    std::vector<Cell> cells = eval(init);

    Quad2Result<T> out;
    for (;;) {
        T total{};
        double err = 0;
        for (const auto& c : cells) {
            total += c.value;
            err += c.error;
        }
        const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
        out = {total, err, err <= tol, cells.size()};
        if (out.converged || cells.size() + 3 > opt.max_cells) break;

        std::vector<Cell> keep;
        std::vector<Box> split;
        const double share = tol / static_cast<double>(cells.size());
        for (const auto& c : cells) {
            if (c.error > share && cells.size() + 3 * (split.size() / 4 + 1) <= opt.max_cells) {
                const double ma = (c.box.a0 + c.box.a1) / 2, mb = (c.box.b0 + c.box.b1) / 2;
                split.push_back({c.box.a0, ma, c.box.b0, mb});
                split.push_back({c.box.a0, ma, mb, c.box.b1});
                split.push_back({ma, c.box.a1, c.box.b0, mb});
                split.push_back({ma, c.box.a1, mb, c.box.b1});
            } else {
                keep.push_back(c);
            }
        }
        if (split.empty()) break;
        auto fresh = eval(split);
        keep.insert(keep.end(), fresh.begin(), fresh.end());
        std::stable_sort(keep.begin(), keep.end(), [](const Cell& x, const Cell& y) {
            return std::tie(x.box.a0, x.box.b0) < std::tie(y.box.a0, y.box.b0);
        });
        cells = std::move(keep);
    }
    return out;
}

}  // namespace geochar
