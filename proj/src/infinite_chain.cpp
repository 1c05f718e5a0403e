#include "vnfq/infinite_chain.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>

namespace vnfq {

Q6Inputs q6_arrivals(const SteadyState& pi1, const Eigen::VectorXd& pi3, double mu2,
                     double mu5, double mu6) {
    Q6Inputs inputs;
    inputs.lambda62 = (1.0 - marginal(pi1, Axis::Phase)(0)) * mu2;
    inputs.lambda65 = (1.0 - pi3(0)) * mu5;
    inputs.mu6 = mu6;
    return inputs;
}

bool q6_stable(const Q6Inputs& inputs) {
    return inputs.lambda6() < inputs.mu6;
}

HessenbergCoefficients hessenberg_coefficients(const Q6Inputs& inputs) {
    const double q2 = inputs.lambda62, n2 = 1.0 - q2;
    const double q5 = inputs.lambda65, n5 = 1.0 - q5;
    const double m = inputs.mu6, nm = 1.0 - m;

    HessenbergCoefficients coeffs;
    coeffs.a = {n2 * n5, q2 * n5 + q5 * n2, q2 * q5};
    coeffs.b = {n2 * n5 * m,
                n2 * n5 * nm + q2 * n5 * m + q5 * n2 * m,
                q2 * n5 * nm + n2 * q5 * nm + q2 * q5 * m,
                q2 * q5 * nm};
    return coeffs;
}

double Q6Solution::evaluate(Eigen::Index i) const {
    if (i < 0) return 0.0;
    if (truncated_fallback) {
        return i < static_cast<Eigen::Index>(fallback_pi.size()) ? fallback_pi[i] : 0.0;
    }
    if (i == 0) return pi0;
    double v = i < static_cast<Eigen::Index>(direct.size()) ? direct[i] : 0.0;
    for (std::size_t j = 0; j < poles.size(); ++j) {
        v += residues[j] * std::pow(poles[j], static_cast<double>(i - 1));
    }
    return v;
}

namespace {

// Polynomials in w = z^-1 are kept as ascending coefficient vectors.
using Poly = std::vector<double>;

double poly_eval(const Poly& p, double w) {
    double v = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * w + *it;
    return v;
}

void trim_leading(Poly& p) {
    double scale = 0.0;
    for (double c : p) scale = std::max(scale, std::abs(c));
    while (p.size() > 1 && std::abs(p.back()) <= 1e-14 * std::max(scale, 1.0)) p.pop_back();
}

// Divides by (w - 1); the remainder must vanish for the generating function.
Poly deflate_at_one(const Poly& p, const char* what) {
    Poly q(p.size() - 1, 0.0);
    double carry = p.back();
    for (std::size_t k = p.size() - 1; k >= 1; --k) {
        q[k - 1] = carry;
        carry = p[k - 1] + carry;
    }
    if (std::abs(carry) > 1e-9) {
        throw SolverError(std::string(what) + " lacks the expected root at w=1 (remainder " +
                          std::to_string(carry) + ")");
    }
    return q;
}

// num = quot * den + rem with deg(rem) < deg(den).
void poly_divide(const Poly& num, const Poly& den, Poly& quot, Poly& rem) {
    rem = num;
    const std::size_t dd = den.size() - 1;
    if (rem.size() - 1 < dd) {
        quot = {};
        return;
    }
    quot.assign(rem.size() - dd, 0.0);
    for (std::size_t k = rem.size() - 1;; --k) {
        const double f = rem[k] / den[dd];
        quot[k - dd] = f;
        for (std::size_t j = 0; j <= dd; ++j) rem[k - dd + j] -= f * den[j];
        if (k == dd) break;
    }
    rem.resize(std::max<std::size_t>(dd, 1), 0.0);
}

struct ChainRates {
    double lambda6;
    double mu6;
};

ChainRates rates_of(const HessenbergCoefficients& c) {
    return {c.arrival_mean(), c.service_rate()};
}

void require_stable(const HessenbergCoefficients& c) {
    const auto [lambda6, mu6] = rates_of(c);
    if (!(lambda6 < mu6)) throw UnstableError(lambda6, mu6);
}

// Geometric tail bound on sum_{i>n} i p^(i-1), used to stop the mean sum.
double mean_tail_bound(double weight, double p, Eigen::Index n) {
    if (p <= 0.0) return 0.0;
    const double omp = 1.0 - p;
    return weight * std::pow(p, static_cast<double>(n)) * (n * omp + 1.0) / (omp * omp);
}

double mean_by_summation(const Q6Solution& sol) {
    double pmax = 0.0, rsum = 0.0;
    for (std::size_t j = 0; j < sol.poles.size(); ++j) {
        pmax = std::max(pmax, std::abs(sol.poles[j]));
        rsum += std::abs(sol.residues[j]);
    }
    double mean = 0.0;
    for (std::size_t i = 1; i < sol.direct.size(); ++i) mean += i * sol.direct[i];
    // Accumulate the pole part term by term until the bound is negligible.
    Eigen::Index i = 1;
    std::vector<double> powers(sol.poles.size(), 1.0);
    while (true) {
        double term = 0.0;
        for (std::size_t j = 0; j < sol.poles.size(); ++j) {
            term += sol.residues[j] * powers[j];
            powers[j] *= sol.poles[j];
        }
        mean += static_cast<double>(i) * term;
        if (mean_tail_bound(rsum, pmax, i) < 1e-13) break;
        if (++i > 50'000'000) throw SolverError("q6 mean summation failed to converge");
    }
    return mean;
}

Q6Solution fallback_solution(const HessenbergCoefficients& coeffs, std::string reason) {
    Q6Solution sol;
    sol.truncated_fallback = true;
    sol.fallback_reason = std::move(reason);
    Eigen::Index n = 1 << 14;
    for (;; n *= 4) {
        try {
            Eigen::VectorXd pi = truncated_solve(coeffs, n);
            sol.fallback_pi.assign(pi.data(), pi.data() + pi.size());
            break;
        } catch (const SolverError&) {
            if (n >= (1 << 20)) throw;
        }
    }
    sol.pi0 = sol.fallback_pi[0];
    double mean = 0.0;
    for (std::size_t i = 1; i < sol.fallback_pi.size(); ++i) mean += i * sol.fallback_pi[i];
    sol.mean = mean;
    return sol;
}

} // namespace

Q6Solution solve_ztransform(const HessenbergCoefficients& coeffs) {
    require_stable(coeffs);
    const auto& a = coeffs.a;
    const auto& b = coeffs.b;

    const double a_slope = a[1] + 2.0 * a[2];
    const double b_slope = b[1] + 2.0 * b[2] + 3.0 * b[3];
    const double pi0 = (1.0 - b_slope) / (1.0 + a_slope - b_slope);

    // Pi(w) = pi0 (w A(w) - B(w)) / (w - B(w)) with w = z^-1; both
    // polynomials share a root at w = 1 which cancels.
    Poly num = {-pi0 * b[0], pi0 * (a[0] - b[1]), pi0 * (a[1] - b[2]), pi0 * (a[2] - b[3])};
    Poly den = {-b[0], 1.0 - b[1], -b[2], -b[3]};
    trim_leading(num);
    trim_leading(den);
    Poly num1 = num.size() > 1 ? deflate_at_one(num, "numerator") : num;
    Poly den1 = den.size() > 1 ? deflate_at_one(den, "denominator") : den;
    trim_leading(num1);
    trim_leading(den1);

    Q6Solution sol;
    sol.pi0 = pi0;

    const std::size_t deg_den = den1.size() - 1;
    std::vector<double> roots;
    if (deg_den == 1) {
        roots = {-den1[0] / den1[1]};
    } else if (deg_den == 2) {
        const double disc = den1[1] * den1[1] - 4.0 * den1[2] * den1[0];
        if (disc < 0.0) {
            return fallback_solution(coeffs, "complex pole pair");
        }
        const double s = std::sqrt(disc);
        const double q = -0.5 * (den1[1] + std::copysign(s, den1[1]));
        double w1, w2;
        if (q != 0.0) {
            w1 = q / den1[2];
            w2 = den1[0] / q;
        } else {
            w1 = 0.0;
            w2 = 0.0;
        }
        if (std::abs(w1 - w2) < 1e-9) {
            return fallback_solution(coeffs, "repeated poles");
        }
        roots = {w1, w2};
    }

    double pi0_check = 0.0;
    if (deg_den == 0) {
        // Purely polynomial generating function: direct terms only.
        sol.direct.resize(num1.size());
        for (std::size_t k = 0; k < num1.size(); ++k) sol.direct[k] = num1[k] / den1[0];
        pi0_check = sol.direct[0];
    } else {
        Poly quot, rem;
        poly_divide(num1, den1, quot, rem);
        sol.direct = quot;
        pi0_check = quot.empty() ? 0.0 : quot[0];
        for (double w : roots) {
            // D1'(w) at a simple root.
            double dp = 0.0;
            for (std::size_t k = 1; k < den1.size(); ++k) {
                dp += k * den1[k] * std::pow(w, static_cast<double>(k - 1));
            }
            const double rho = poly_eval(rem, w) / dp;
            const double pole = 1.0 / w;
            if (!(std::abs(pole) < 1.0)) {
                return fallback_solution(coeffs, "pole on or outside the unit circle");
            }
            sol.poles.push_back(pole);
            sol.residues.push_back(-rho * pole * pole);
            pi0_check += -rho * pole;
        }
    }
    if (std::abs(pi0_check - pi0) > 1e-9) {
        return fallback_solution(coeffs, "pole expansion inconsistent with pi0 identity");
    }

    sol.mean = mean_by_summation(sol);
    return sol;
}

Eigen::VectorXd truncated_solve(const HessenbergCoefficients& coeffs, Eigen::Index n) {
    require_stable(coeffs);
    if (n < 4) throw SolverError("truncation level too small");

    const auto& a = coeffs.a;
    const auto& b = coeffs.b;
    const Eigen::Index last = n - 1;

    // (I - P)^T x = 0 with the state-0 balance row replaced by x_0 = 1; this
    // pins the scale without a dense normalization row, so the system stays
    // banded. State 0 has positive mass whenever the chain is stable.
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(5 * static_cast<std::size_t>(n));
    auto add_transition = [&](Eigen::Index from, Eigen::Index to, double prob) {
        if (prob == 0.0) return;
        to = std::min(to, last);  // overflow mass reflects into the last state
        if (to != 0) trip.emplace_back(to, from, -prob);
    };
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i == 0) {
            add_transition(0, 0, a[0]);
            add_transition(0, 1, a[1]);
            add_transition(0, 2, a[2]);
        } else {
            add_transition(i, i - 1, b[0]);
            add_transition(i, i, b[1]);
            add_transition(i, i + 1, b[2]);
            add_transition(i, i + 2, b[3]);
        }
        if (i != 0) trip.emplace_back(i, i, 1.0);
    }
    trip.emplace_back(0, 0, 1.0);

    Eigen::SparseMatrix<double> A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();

    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(0) = 1.0;

    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(A);
    lu.factorize(A);
    if (lu.info() != Eigen::Success) throw SolverError("sparse factorization failed");
    Eigen::VectorXd pi = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !pi.allFinite()) throw SolverError("sparse solve failed");

    const double scale = pi.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (pi(i) < -1e-9 * scale) {
            throw SolverError("truncated solve produced a negative probability");
        }
        if (pi(i) < 0.0) pi(i) = 0.0;
    }
    pi /= pi.sum();

    // A-posteriori geometric bound on the mass the truncation cut off. A head
    // at the solver's noise floor is negligible regardless of the (then
    // unestimable) decay ratio.
    const double tail_head = pi(last);
    if (tail_head > 1e-14) {
        const double prev = pi(last - 1);
        const double ratio = prev > 0.0 ? tail_head / prev : 1.0;
        const double bound = ratio < 1.0 ? tail_head * ratio / (1.0 - ratio) : 1.0;
        if (!(bound <= 1e-10)) {
            throw SolverError("truncation level insufficient: tail bound " +
                              std::to_string(bound));
        }
    }
    return pi;
}

double q6_mean(const Q6Solution& solution) { return solution.mean; }

double q6_mean_by_series(const Q6Solution& solution) {
    if (solution.truncated_fallback) return solution.mean;
    double mean = 0.0;
    for (std::size_t i = 1; i < solution.direct.size(); ++i) mean += i * solution.direct[i];
    for (std::size_t j = 0; j < solution.poles.size(); ++j) {
        const double omp = 1.0 - solution.poles[j];
        mean += solution.residues[j] / (omp * omp);
    }
    return mean;
}

} // namespace vnfq
