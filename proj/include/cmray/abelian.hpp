#pragma once

// Structure of a finite abelian group given by its multiplication table:
// invariant factors via the Smith normal form of the relation lattice, and a
// discrete log for every element.

#include "cmray/qfield.hpp"

#include <functional>
#include <numeric>
#include <utility>
#include <vector>

namespace cmray {

class FiniteAbelianGroup {
  public:
    using Mul = std::function<int(int, int)>;

    FiniteAbelianGroup() = default;

    /// Elements are 0..order-1, `identity` the neutral element.
    FiniteAbelianGroup(int order, int identity, Mul const& mul) { build(order, identity, mul); }

    int order() const { return static_cast<int>(element_of_flat_.size()); }
    std::vector<int> const& invariant_factors() const { return factors_; }
    std::vector<int> const& log(int element) const { return logs_.at(element); }
    int element(std::vector<int> const& exps) const { return element_of_flat_.at(flat(exps)); }

    /// Mixed radix index of a reduced exponent vector.
    int flat(std::vector<int> const& exps) const
    {
        int idx = 0;
        for (std::size_t k = 0; k < factors_.size(); ++k) {
            idx = idx * factors_[k] + static_cast<int>(detail::mod(exps[k], factors_[k]));
        }
        return idx;
    }

    std::vector<int> unflat(int idx) const
    {
        std::vector<int> e(factors_.size());
        for (std::size_t k = factors_.size(); k-- > 0;) {
            e[k] = idx % factors_[k];
            idx /= factors_[k];
        }
        return e;
    }

  private:
    void build(int order, int identity, Mul const& mul);

    std::vector<int> factors_;
    std::vector<std::vector<int>> logs_;
    std::vector<int> element_of_flat_;
};

namespace detail {

using Matrix = std::vector<std::vector<i64>>;

inline Matrix identity_matrix(std::size_t n)
{
    Matrix m(n, std::vector<i64>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

/// Smith normal form of the square matrix R in place, tracking the column
/// transform V and its inverse so that (row ops) * R0 * V = R.
inline void smith_normal_form(Matrix& R, Matrix& V, Matrix& Vinv)
{
    std::size_t n = R.size();
    V = identity_matrix(n);
    Vinv = identity_matrix(n);
    auto col_addmul = [&](std::size_t j, std::size_t t, i64 q) { // col_j -= q col_t
        if (q == 0) return;
        for (std::size_t i = 0; i < n; ++i) {
            R[i][j] = narrow(static_cast<i128>(R[i][j]) - static_cast<i128>(q) * R[i][t]);
            V[i][j] = narrow(static_cast<i128>(V[i][j]) - static_cast<i128>(q) * V[i][t]);
        }
        for (std::size_t k = 0; k < n; ++k) Vinv[t][k] = narrow(static_cast<i128>(Vinv[t][k]) + static_cast<i128>(q) * Vinv[j][k]);
    };
    auto col_swap = [&](std::size_t j, std::size_t t) {
        if (j == t) return;
        for (std::size_t i = 0; i < n; ++i) {
            std::swap(R[i][j], R[i][t]);
            std::swap(V[i][j], V[i][t]);
        }
        std::swap(Vinv[j], Vinv[t]);
    };
    auto row_addmul = [&](std::size_t j, std::size_t t, i64 q) { // row_j -= q row_t
        if (q == 0) return;
        for (std::size_t k = 0; k < n; ++k) R[j][k] = narrow(static_cast<i128>(R[j][k]) - static_cast<i128>(q) * R[t][k]);
    };
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // smallest nonzero entry of the remaining block becomes the pivot
            std::size_t pi = n, pj = n;
            for (std::size_t i = t; i < n; ++i) {
                for (std::size_t j = t; j < n; ++j) {
                    if (R[i][j] != 0 && (pi == n || std::llabs(R[i][j]) < std::llabs(R[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (pi == n) return;
            std::swap(R[pi], R[t]);
            col_swap(pj, t);
            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                row_addmul(i, t, floor_div(R[i][t], R[t][t]));
                if (R[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                col_addmul(j, t, floor_div(R[t][j], R[t][t]));
                if (R[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility condition
            bool divides = true;
            for (std::size_t i = t + 1; i < n && divides; ++i) {
                for (std::size_t j = t + 1; j < n; ++j) {
                    if (R[i][j] % R[t][t] != 0) {
                        for (std::size_t k = 0; k < n; ++k) R[t][k] += R[i][k];
                        divides = false;
                        break;
                    }
                }
            }
            if (divides) break;
        }
        if (R[t][t] < 0) {
            for (std::size_t k = 0; k < n; ++k) R[t][k] = -R[t][k];
        }
    }
}

} // namespace detail

inline void FiniteAbelianGroup::build(int order, int identity, Mul const& mul)
{
    // Greedy generators; each new generator x gets the relation x^e in <previous>.
    std::vector<int> gens;
    std::vector<std::vector<i64>> relations;
    std::vector<std::vector<i64>> coords(order); // exponents over gens, empty = not yet reached
    std::vector<char> reached(order, 0);
    std::vector<int> members{identity};
    reached[identity] = 1;
    for (int x = 0; x < order; ++x) {
        if (reached[x]) continue;
        std::size_t m = gens.size();
        for (int h : members) coords[h].push_back(0);
        // smallest e with x^e in the current subgroup
        int e = 1;
        int xe = x;
        while (!reached[xe]) {
            xe = mul(xe, x);
            ++e;
        }
        std::vector<i64> rel(m + 1, 0);
        for (std::size_t j = 0; j < m; ++j) rel[j] = -coords[xe][j];
        rel[m] = e;
        for (auto& r : relations) r.push_back(0);
        relations.push_back(rel);
        gens.push_back(x);
        std::vector<int> fresh;
        int xk = identity;
        for (int k = 1; k < e; ++k) {
            xk = mul(xk, x);
            for (int h : members) {
                int y = mul(h, xk);
                if (reached[y]) fail(ErrorCode::InvalidArgument, "multiplication table is not a group");
                reached[y] = 1;
                coords[y] = coords[h];
                coords[y][m] = k;
                fresh.push_back(y);
            }
        }
        members.insert(members.end(), fresh.begin(), fresh.end());
    }
    if (static_cast<int>(members.size()) != order) fail(ErrorCode::InvalidArgument, "group elements not all reached");

    std::size_t m = gens.size();
    detail::Matrix R = relations, V, Vinv;
    detail::smith_normal_form(R, V, Vinv);
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < m; ++k) {
        if (R[k][k] != 1) keep.push_back(k);
    }
    factors_.clear();
    for (std::size_t k : keep) factors_.push_back(static_cast<int>(R[k][k]));
    logs_.assign(order, {});
    element_of_flat_.assign(order, -1);
    for (int x = 0; x < order; ++x) {
        std::vector<int> y;
        for (std::size_t k : keep) {
            i128 s = 0;
            for (std::size_t j = 0; j < m; ++j) s += static_cast<i128>(coords[x][j]) * V[j][k];
            y.push_back(static_cast<int>(detail::mod(static_cast<i64>(s % R[k][k]), R[k][k])));
        }
        logs_[x] = y;
        int idx = flat(y);
        if (element_of_flat_[idx] != -1) fail(ErrorCode::InvalidArgument, "discrete log is not injective");
        element_of_flat_[idx] = x;
    }
}

} // namespace cmray
