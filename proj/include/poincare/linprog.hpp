#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <vector>

#include "poincare/common.hpp"

namespace poincare::lp {

// Dense low-dimensional linear programming by Seidel's incremental method
// with a fixed processing order. Dimensions here are <= 5 and row counts are
// small, so worst-case behaviour is irrelevant; determinism is what matters.

constexpr double kFeasEps = 1e-9;

struct Rows {
    std::vector<Eigen::VectorXd> a;
    std::vector<double> b;

    int size() const { return static_cast<int>(a.size()); }
    void add(const Eigen::VectorXd& ai, double bi) {
        a.push_back(ai);
        b.push_back(bi);
    }
    // normalized copy, dropping near-zero rows (infeasible constants flagged)
    std::optional<Rows> normalized() const {
        Rows out;
        for (int i = 0; i < size(); ++i) {
            double n = a[i].norm();
            if (n < 1e-13) {
                if (b[i] < -kFeasEps) return std::nullopt;
                continue;
            }
            out.add(a[i] / n, b[i] / n);
        }
        return out;
    }
};

namespace detail {

inline std::optional<Eigen::VectorXd> seidel(const std::vector<Eigen::VectorXd>& a,
                                             const std::vector<double>& b,
                                             const Eigen::VectorXd& c, double box) {
    const int d = static_cast<int>(c.size());
    const int m = static_cast<int>(a.size());
    if (d == 1) {
        double lo = -box, hi = box;
        for (int i = 0; i < m; ++i) {
            double ai = a[i](0);
            if (std::abs(ai) < 1e-13) {
                if (b[i] < -kFeasEps) return std::nullopt;
                continue;
            }
            if (ai > 0.0)
                hi = std::min(hi, b[i] / ai);
            else
                lo = std::max(lo, b[i] / ai);
        }
        if (lo > hi + 1e-11) return std::nullopt;
        Eigen::VectorXd x(1);
        if (c(0) > 1e-14)
            x(0) = hi;
        else if (c(0) < -1e-14)
            x(0) = lo;
        else
            x(0) = std::clamp(0.0, lo, hi);
        return x;
    }

    Eigen::VectorXd x(d);
    for (int i = 0; i < d; ++i) x(i) = c(i) > 1e-14 ? box : (c(i) < -1e-14 ? -box : 0.0);

    for (int i = 0; i < m; ++i) {
        if (a[i].dot(x) <= b[i] + kFeasEps) continue;
        // optimum of the prefix lies on the boundary a_i . x = b_i
        int k = 0;
        a[i].cwiseAbs().maxCoeff(&k);
        if (std::abs(a[i](k)) < 1e-12) {
            if (b[i] < -kFeasEps) return std::nullopt;
            continue;
        }
        const double inv = 1.0 / a[i](k);
        auto drop = [&](const Eigen::VectorXd& v) {
            Eigen::VectorXd w(d - 1);
            int t = 0;
            for (int j = 0; j < d; ++j)
                if (j != k) w(t++) = v(j);
            return w;
        };
        Eigen::VectorXd ai_red = drop(a[i]);
        std::vector<Eigen::VectorXd> sa;
        std::vector<double> sb;
        sa.reserve(i + 2);
        for (int j = 0; j < i; ++j) {
            double f = a[j](k) * inv;
            sa.push_back(drop(a[j]) - f * ai_red);
            sb.push_back(b[j] - f * b[i]);
        }
        // the box faces of the eliminated variable become ordinary rows
        sa.push_back(-inv * ai_red);
        sb.push_back(box - inv * b[i]);
        sa.push_back(inv * ai_red);
        sb.push_back(box + inv * b[i]);
        Eigen::VectorXd cc = drop(c) - (c(k) * inv) * ai_red;
        auto sub = seidel(sa, sb, cc, box);
        if (!sub) return std::nullopt;
        int t = 0;
        for (int j = 0; j < d; ++j)
            if (j != k) x(j) = (*sub)(t++);
        double rest = 0.0;
        for (int j = 0; j < d; ++j)
            if (j != k) rest += a[i](j) * x(j);
        x(k) = (b[i] - rest) * inv;
    }
    return x;
}

}  // namespace detail

struct Solution {
    bool feasible = false;
    Eigen::VectorXd x;
    double value = 0.0;
};

// maximize c.x over rows intersected with [-box, box]^d
inline Solution maximize(const Rows& rows, const Eigen::VectorXd& c, double box) {
    Solution out;
    auto norm = rows.normalized();
    if (!norm) return out;
    auto x = detail::seidel(norm->a, norm->b, c, box);
    if (!x) return out;
    out.feasible = true;
    out.x = *x;
    out.value = c.dot(*x);
    return out;
}

struct MarginResult {
    bool feasible = false;   // the relaxed system (any margin) meets the box
    Eigen::VectorXd u;
    double margin = 0.0;     // best uniform slack across normalized rows
};

// maximize m subject to a.u + m*|a| <= b over u in the box, m <= box.
inline MarginResult margin_point(const Rows& rows, int dim, double box) {
    MarginResult out;
    auto norm = rows.normalized();
    if (!norm) return out;
    Rows sys;
    for (int i = 0; i < norm->size(); ++i) {
        Eigen::VectorXd r(dim + 1);
        r.head(dim) = norm->a[i];
        r(dim) = 1.0;
        sys.add(r, norm->b[i]);
    }
    Eigen::VectorXd cap = Eigen::VectorXd::Zero(dim + 1);
    cap(dim) = 1.0;
    sys.add(cap, box);
    auto sol = detail::seidel(sys.a, sys.b, cap, box);
    if (!sol) return out;
    out.feasible = true;
    out.u = sol->head(dim);
    out.margin = (*sol)(dim);
    return out;
}

}  // namespace poincare::lp
