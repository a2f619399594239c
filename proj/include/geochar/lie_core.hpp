/**
 * @file lie_core.hpp
 * @brief Root systems, weights and Weyl groups over exact rationals.
 *
 * Weights are stored in the fundamental-weight basis and roots in
 * simple-root coordinates. The Cartan matrix convention is
 * a_ij = <alpha_i^vee, alpha_j>, so the fundamental-weight coordinates of
 * alpha_j are the j-th column of the Cartan matrix.
 *
 * Supported types: A1, A2, B2, G2 and products of A1 written "A1xA1",
 * "A1xA1xA1", ... Everything here is immutable after construction.
 */
#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <deque>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace geochar {

using Rational = boost::rational<long long>;

/** @brief Base class of every error raised by the library. */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedSeries : public Error {
public:
    explicit UnsupportedSeries(const std::string& label)
        : Error("unsupported root system type '" + label +
                "' (supported: A1, A2, B2, G2, A1xA1...)") {}
};

class RankMismatch : public Error {
public:
    RankMismatch(std::size_t expected, std::size_t got)
        : Error("rank mismatch: expected " + std::to_string(expected) + ", got " +
                std::to_string(got)) {}
};

inline std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << q.numerator();
    if (q.denominator() != 1) os << '/' << q.denominator();
    return os.str();
}

/** @brief A weight in fundamental-weight coordinates. */
struct Weight {
    std::vector<Rational> coords;

    Weight() = default;
    explicit Weight(std::vector<Rational> c) : coords(std::move(c)) {}
    Weight(std::initializer_list<long long> c) {
        for (long long v : c) coords.emplace_back(v);
    }
    static Weight zero(std::size_t rank) { return Weight(std::vector<Rational>(rank, Rational(0))); }

    std::size_t rank() const { return coords.size(); }
    bool is_integral() const {
        return std::all_of(coords.begin(), coords.end(),
                           [](const Rational& q) { return q.denominator() == 1; });
    }
    bool is_dominant() const {
        return std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return q >= Rational(0); });
    }

    Weight& operator+=(const Weight& o) {
        check(o);
        for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
        return *this;
    }
    Weight& operator-=(const Weight& o) {
        check(o);
        for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
        return *this;
    }
    friend Weight operator+(Weight a, const Weight& b) { return a += b; }
    friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
    friend Weight operator-(Weight a) {
        for (auto& q : a.coords) q = -q;
        return a;
    }
    friend Weight operator*(const Rational& s, Weight a) {
        for (auto& q : a.coords) q *= s;
        return a;
    }
    friend bool operator==(const Weight&, const Weight&) = default;
    friend bool operator<(const Weight& a, const Weight& b) { return a.coords < b.coords; }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (i) s += ",";
            s += to_string(coords[i]);
        }
        return s + ")";
    }

private:
    void check(const Weight& o) const {
        if (o.rank() != rank()) throw RankMismatch(rank(), o.rank());
    }
};

/** @brief A root in simple-root coordinates. */
struct Root {
    std::vector<int> coords;

    bool is_positive() const {
        return std::all_of(coords.begin(), coords.end(), [](int c) { return c >= 0; });
    }
    friend bool operator==(const Root&, const Root&) = default;
    friend auto operator<=>(const Root&, const Root&) = default;
    Root operator-() const {
        Root r = *this;
        for (int& c : r.coords) c = -c;
        return r;
    }
};

using RationalMatrix = std::vector<std::vector<Rational>>;

namespace detail {

inline RationalMatrix identity_matrix(std::size_t n) {
    RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
    const std::size_t n = a.size();
    RationalMatrix c(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == Rational(0)) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

inline RationalMatrix inverse(RationalMatrix a) {
    const std::size_t n = a.size();
    RationalMatrix inv = identity_matrix(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == Rational(0)) ++piv;
        if (piv == n) throw Error("singular Cartan matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const Rational d = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == Rational(0)) continue;
            const Rational f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

}  // namespace detail

/**
 * @brief A finite root system with a chosen positive system.
 *
 * roots are sorted lexicographically in simple-root coordinates.
 */
class RootSystem {
public:
    std::string type_label;
    std::size_t rank = 0;
    std::vector<std::vector<int>> cartan;  ///< a_ij = <alpha_i^vee, alpha_j>
    std::vector<Rational> simple_length2;   ///< (alpha_i, alpha_i)
    std::vector<Root> roots;
    std::vector<Root> positive_roots;
    std::vector<Root> simple_roots;
    Weight rho;

    /** Fundamental-weight coordinates of a root. */
    Weight root_to_weight(const Root& a) const {
        Weight w = Weight::zero(rank);
        for (std::size_t j = 0; j < rank; ++j)
            for (std::size_t i = 0; i < rank; ++i) w.coords[i] += Rational(a.coords[j] * cartan[i][j]);
        return w;
    }

    /** Invariant inner product on weights. */
    Rational inner(const Weight& a, const Weight& b) const {
        if (a.rank() != rank) throw RankMismatch(rank, a.rank());
        if (b.rank() != rank) throw RankMismatch(rank, b.rank());
        Rational s = 0;
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < rank; ++j) s += a.coords[i] * gram_[i][j] * b.coords[j];
        return s;
    }

    Rational root_length2(const Root& a) const {
        const Weight w = root_to_weight(a);
        return inner(w, w);
    }

    /** 2(lambda, alpha)/(alpha, alpha). */
    Rational coroot_pairing(const Weight& lambda, const Root& a) const {
        return Rational(2) * inner(lambda, root_to_weight(a)) / root_length2(a);
    }

    bool is_regular(const Weight& lambda) const {
        return std::none_of(positive_roots.begin(), positive_roots.end(),
                            [&](const Root& a) { return coroot_pairing(lambda, a) == Rational(0); });
    }

    /** Reflection in the i-th simple root, acting on fundamental-weight coordinates. */
    RationalMatrix simple_reflection(std::size_t i) const {
        RationalMatrix m = detail::identity_matrix(rank);
        for (std::size_t j = 0; j < rank; ++j) m[j][i] -= Rational(cartan[j][i]);
        return m;
    }

    /** Build from a Cartan matrix and simple root lengths. */
    static RootSystem from_cartan(std::string label, std::vector<std::vector<int>> a,
                                  std::vector<Rational> len2) {
        RootSystem rs;
        rs.type_label = std::move(label);
        rs.rank = a.size();
        rs.cartan = std::move(a);
        rs.simple_length2 = std::move(len2);

        // (omega_i, omega_k) = ((alpha_i, alpha_i)/2) * (A^{-1})_{ik}
        RationalMatrix am(rs.rank, std::vector<Rational>(rs.rank));
        for (std::size_t i = 0; i < rs.rank; ++i)
            for (std::size_t j = 0; j < rs.rank; ++j) am[i][j] = rs.cartan[i][j];
        const RationalMatrix ainv = detail::inverse(am);
        rs.gram_ = ainv;
        for (std::size_t i = 0; i < rs.rank; ++i)
            for (std::size_t k = 0; k < rs.rank; ++k) rs.gram_[i][k] *= rs.simple_length2[i] / 2;

        for (std::size_t i = 0; i < rs.rank; ++i) {
            Root r{std::vector<int>(rs.rank, 0)};
            r.coords[i] = 1;
            rs.simple_roots.push_back(r);
        }
        rs.roots = rs.close_under_reflections();
        for (const Root& r : rs.roots)
            if (r.is_positive()) rs.positive_roots.push_back(r);
        rs.rho = Weight(std::vector<Rational>(rs.rank, Rational(1)));
        return rs;
    }

private:
    RationalMatrix gram_;

    Root reflect(const Root& a, std::size_t i) const {
        int pairing = 0;  // <a, alpha_i^vee>
        for (std::size_t j = 0; j < rank; ++j) pairing += a.coords[j] * cartan[i][j];
        Root r = a;
        r.coords[i] -= pairing;
        return r;
    }

    std::vector<Root> close_under_reflections() const {
        std::vector<Root> found(simple_roots.begin(), simple_roots.end());
        std::deque<Root> queue(simple_roots.begin(), simple_roots.end());
        auto known = [&](const Root& r) { return std::find(found.begin(), found.end(), r) != found.end(); };
        while (!queue.empty()) {
            const Root a = queue.front();
            queue.pop_front();
            for (std::size_t i = 0; i < rank; ++i) {
                Root b = reflect(a, i);
                if (!known(b)) {
                    found.push_back(b);
                    queue.push_back(b);
                }
            }
        }
        std::sort(found.begin(), found.end());
        return found;
    }
};

/** @brief Construct a supported root system; throws UnsupportedSeries otherwise. */
inline RootSystem build_root_system(const std::string& type_label) {
    if (type_label == "A1") return RootSystem::from_cartan("A1", {{2}}, {Rational(2)});
    if (type_label == "A2")
        return RootSystem::from_cartan("A2", {{2, -1}, {-1, 2}}, {Rational(2), Rational(2)});
    if (type_label == "B2")  // alpha_1 long, alpha_2 short
        return RootSystem::from_cartan("B2", {{2, -1}, {-2, 2}}, {Rational(2), Rational(1)});
    if (type_label == "G2")  // alpha_1 short, alpha_2 long
        return RootSystem::from_cartan("G2", {{2, -3}, {-1, 2}}, {Rational(2), Rational(6)});

    // products of A1: "A1xA1", "A1xA1xA1", ...
    std::size_t n = 0;
    std::size_t pos = 0;
    while (pos < type_label.size()) {
        if (type_label.compare(pos, 2, "A1") != 0) throw UnsupportedSeries(type_label);
        ++n;
        pos += 2;
        if (pos == type_label.size()) break;
        if (type_label[pos] != 'x') throw UnsupportedSeries(type_label);
        ++pos;
        if (pos == type_label.size()) throw UnsupportedSeries(type_label);
    }
    if (n < 2) throw UnsupportedSeries(type_label);
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) a[i][i] = 2;
    return RootSystem::from_cartan(type_label, a, std::vector<Rational>(n, Rational(2)));
}

/** @brief rho as a weight (the sum of the fundamental weights). */
inline Weight rho(const RootSystem& rs) { return rs.rho; }

/** @brief A Weyl group element: reduced word, matrix on weight coordinates, sign. */
struct WeylElement {
    std::vector<int> word;  ///< s_{word[0]} s_{word[1]} ... (0-based simple indices)
    RationalMatrix matrix;
    int sign = 1;

    std::size_t length() const { return word.size(); }
};

/** @brief w . lambda; throws RankMismatch. */
inline Weight act(const WeylElement& w, const Weight& lambda) {
    if (lambda.rank() != w.matrix.size()) throw RankMismatch(w.matrix.size(), lambda.rank());
    Weight out = Weight::zero(lambda.rank());
    for (std::size_t i = 0; i < lambda.rank(); ++i)
        for (std::size_t j = 0; j < lambda.rank(); ++j) out.coords[i] += w.matrix[i][j] * lambda.coords[j];
    return out;
}

inline int sign(const WeylElement& w) { return w.sign; }

/** @brief Breadth-first closure of the simple reflections; identity first. */
inline std::vector<WeylElement> enumerate_weyl(const RootSystem& rs) {
    std::vector<RationalMatrix> gens;
    for (std::size_t i = 0; i < rs.rank; ++i) gens.push_back(rs.simple_reflection(i));

    std::vector<WeylElement> out;
    std::map<RationalMatrix, std::size_t> seen;
    WeylElement id{{}, detail::identity_matrix(rs.rank), 1};
    seen.emplace(id.matrix, 0);
    out.push_back(id);
    for (std::size_t head = 0; head < out.size(); ++head) {
        for (std::size_t i = 0; i < rs.rank; ++i) {
            RationalMatrix m = detail::multiply(gens[i], out[head].matrix);
            if (seen.count(m)) continue;
            WeylElement w;
            w.word.push_back(static_cast<int>(i));
            w.word.insert(w.word.end(), out[head].word.begin(), out[head].word.end());
            w.matrix = std::move(m);
            w.sign = -out[head].sign;
            seen.emplace(w.matrix, out.size());
            out.push_back(std::move(w));
        }
    }
    return out;
}

/** @brief Enumerated Weyl group with table lookup for products. */
class WeylGroup {
public:
    explicit WeylGroup(const RootSystem& rs) : elements_(enumerate_weyl(rs)) {
        for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i].matrix, i);
    }

    const std::vector<WeylElement>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    const WeylElement& identity() const { return elements_.front(); }
    const WeylElement& longest() const { return elements_.back(); }

    const WeylElement& product(const WeylElement& a, const WeylElement& b) const {
        return elements_.at(index_.at(detail::multiply(a.matrix, b.matrix)));
    }

    /** Elements fixing lambda. */
    std::vector<WeylElement> stabilizer(const Weight& lambda) const {
        std::vector<WeylElement> out;
        for (const auto& w : elements_)
            if (act(w, lambda) == lambda) out.push_back(w);
        return out;
    }

private:
    std::vector<WeylElement> elements_;
    std::map<RationalMatrix, std::size_t> index_;
};

}  // namespace geochar
