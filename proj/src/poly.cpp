#include "qes/poly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qes/errors.hpp"

namespace qes {

// ---------------------------------------------------------------- rational

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) throw Error("cannot convert non-finite double to rational");
    if (x == 0.0) return Rational(0);
    int exp2 = 0;
    const double mant = std::frexp(x, &exp2);         // x = mant * 2^exp2, 0.5 <= |mant| < 1
    const auto imant = static_cast<long long>(std::ldexp(mant, 53));
    exp2 -= 53;
    Rational r(imant);
    if (exp2 > 0)
        r *= Rational(BigInt(1) << exp2);
    else if (exp2 < 0)
        r /= Rational(BigInt(1) << (-exp2));
    return r;
}

Rational rationalize(double x, double tol) {
    if (!std::isfinite(x)) throw Error("cannot rationalize non-finite double");
    const bool neg = x < 0;
    double v = neg ? -x : x;
    // continued-fraction convergents p/q of v
    BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(frac);
        if (fl > 9e17) break;
        const auto a = static_cast<long long>(fl);
        BigInt p2 = a * p1 + p0;
        BigInt q2 = a * q1 + q0;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double approx = to_double(Rational(p1) / Rational(q1));
        if (std::abs(approx - v) <= tol) break;
        const double rem = frac - fl;
        if (rem < 1e-18) break;
        frac = 1.0 / rem;
    }
    Rational r = Rational(p1) / Rational(q1);
    return neg ? -r : r;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    if (r == 0) return Rational(0);
    const BigInt num = numerator(r), den = denominator(r);
    const BigInt sn = boost::multiprecision::sqrt(num);
    const BigInt sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rational(sn) / Rational(sd);
}

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

// -------------------------------------------------------------------- Poly

Poly::Poly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }
Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Rational& c) { return Poly({c}); }
Poly Poly::variable() { return Poly({Rational(0), Rational(1)}); }

Poly Poly::monomial(int power, const Rational& c) {
    if (c == 0) return {};
    std::vector<Rational> v(power + 1, Rational(0));
    v[power] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Rational& Poly::operator[](int k) const {
    static const Rational zero(0);
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) return zero;
    return coeffs_[k];
}

const Rational& Poly::leading() const {
    if (is_zero()) throw ZeroPolynomialError();
    return coeffs_.back();
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) v[i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) v[i] += o.coeffs_[i];
    return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
    std::vector<Rational> v(coeffs_);
    for (auto& c : v) c = -c;
    return Poly(std::move(v));
}

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < o.coeffs_.size(); ++j) v[i + j] += coeffs_[i] * o.coeffs_[j];
    return Poly(std::move(v));
}

Poly Poly::scaled(const Rational& c) const {
    if (c == 0) return {};
    std::vector<Rational> v(coeffs_);
    for (auto& x : v) x *= c;
    return Poly(std::move(v));
}

Poly Poly::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> v(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * Rational(static_cast<int>(i));
    return Poly(std::move(v));
}

Poly Poly::shifted_up(int k) const {
    if (is_zero() || k == 0) return k == 0 ? *this : Poly{};
    std::vector<Rational> v(coeffs_.size() + k, Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) v[i + k] = coeffs_[i];
    return Poly(std::move(v));
}

Poly Poly::shifted_down(int k) const {
    if (is_zero()) return {};
    if (static_cast<int>(coeffs_.size()) <= k) throw Error("shifted_down: degree too low");
    for (int i = 0; i < k; ++i)
        if (coeffs_[i] != 0) throw Error("shifted_down: polynomial not divisible by x^k");
    return Poly(std::vector<Rational>(coeffs_.begin() + k, coeffs_.end()));
}

Rational Poly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Poly::eval_double(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
}

int Poly::sign_at(const Rational& x) const {
    const Rational v = eval(x);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[k];
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        const Rational a = c < 0 ? Rational(-c) : c;
        if (a != 1 || k == 0) os << a;
        if (k >= 1) {
            if (a != 1) os << "*";
            os << var;
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

// ------------------------------------------------------------------- Sturm

namespace {

// Scale to integer coefficients with content 1, preserving sign.
Poly primitive_part(const Poly& p) {
    if (p.is_zero()) return p;
    BigInt den_lcm = 1;
    for (const auto& c : p.coefficients())
        den_lcm = boost::multiprecision::lcm(den_lcm, denominator(c));
    BigInt num_gcd = 0;
    std::vector<Rational> v;
    v.reserve(p.coefficients().size());
    for (const auto& c : p.coefficients()) {
        Rational s = c * Rational(den_lcm);
        v.push_back(s);
        num_gcd = boost::multiprecision::gcd(num_gcd, numerator(s));
    }
    if (num_gcd == 0) num_gcd = 1;
    for (auto& c : v) c /= Rational(num_gcd);
    return Poly(std::move(v));
}

// Remainder of a / b over Q.
Poly poly_rem(Poly a, const Poly& b) {
    while (!a.is_zero() && a.degree() >= b.degree()) {
        const Rational q = a.leading() / b.leading();
        a = a - b.scaled(q).shifted_up(a.degree() - b.degree());
    }
    return a;
}

std::vector<Poly> sturm_chain(const Poly& p) {
    std::vector<Poly> chain;
    chain.push_back(primitive_part(p));
    Poly d = p.derivative();
    if (d.is_zero()) return chain;
    chain.push_back(primitive_part(d));
    while (true) {
        Poly r = poly_rem(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        chain.push_back(primitive_part(-r));
    }
    return chain;
}

// Sign variations at x, skipping exact zeros. With this convention
// V(lo) - V(hi) counts distinct real roots in the half-open interval (lo, hi].
int sign_variations(const std::vector<Poly>& chain, const Rational& x) {
    int count = 0, prev = 0;
    for (const auto& q : chain) {
        const int s = q.sign_at(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

Poly poly_gcd(Poly a, Poly b) {
    a = primitive_part(a);
    b = primitive_part(b);
    while (!b.is_zero()) {
        Poly r = primitive_part(poly_rem(a, b));
        a = b;
        b = r;
    }
    return a;
}

}  // namespace

Rational cauchy_root_bound(const Poly& p) {
    if (p.is_zero()) throw ZeroPolynomialError();
    Rational mx(0);
    const Rational lead = p.leading() < 0 ? Rational(-p.leading()) : p.leading();
    for (const auto& c : p.coefficients()) {
        Rational a = c < 0 ? Rational(-c) : c;
        if (a > mx) mx = a;
    }
    return Rational(1) + mx / lead;
}

int sturm_count(const Poly& p, const Rational& lo, const Rational& hi) {
    if (p.is_zero()) throw ZeroPolynomialError();
    if (!(lo < hi)) throw Error("sturm_count: empty interval");
    const auto chain = sturm_chain(p);
    int count = sign_variations(chain, lo) - sign_variations(chain, hi);
    if (p.sign_at(hi) == 0) --count;  // (lo, hi] -> (lo, hi)
    return count;
}

static int root_multiplicity(const Poly& p, const Rational& lo, const Rational& hi) {
    int mult = 1;
    Poly g = poly_gcd(p, p.derivative());
    while (g.degree() >= 1 && sturm_count(g, lo, hi) > 0) {
        ++mult;
        g = poly_gcd(g, g.derivative());
    }
    return mult;
}

std::vector<RootInterval> isolate_real_roots(const Poly& p) {
    if (p.is_zero()) throw ZeroPolynomialError();
    std::vector<RootInterval> out;
    if (p.degree() == 0) return out;
    const Rational bound = cauchy_root_bound(p);

    struct Seg { Rational lo, hi; int count; };
    std::vector<Seg> stack;
    const int total = sturm_count(p, -bound, bound);
    if (total > 0) stack.push_back({-bound, bound, total});

    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.count == 1 && p.sign_at(s.lo) != 0 && p.sign_at(s.hi) != 0) {
            out.push_back({s.lo, s.hi, root_multiplicity(p, s.lo, s.hi)});
            continue;
        }
        const Rational mid = (s.lo + s.hi) / 2;
        if (p.sign_at(mid) == 0) {
            // exact rational root at the midpoint: shrink a private bracket
            Rational delta = (s.hi - s.lo) / 4;
            while (p.sign_at(mid - delta) == 0 || p.sign_at(mid + delta) == 0 ||
                   sturm_count(p, mid - delta, mid + delta) != 1)
                delta /= 2;
            out.push_back({mid - delta, mid + delta, root_multiplicity(p, mid - delta, mid + delta)});
            const int below = sturm_count(p, s.lo, mid - delta);
            const int above = sturm_count(p, mid + delta, s.hi);
            if (below > 0) stack.push_back({s.lo, Rational(mid - delta), below});
            if (above > 0) stack.push_back({Rational(mid + delta), s.hi, above});
            continue;
        }
        const int left = sturm_count(p, s.lo, mid);
        const int right = s.count - left - (p.sign_at(mid) == 0 ? 1 : 0);
        if (left > 0) stack.push_back({s.lo, mid, left});
        if (right > 0) stack.push_back({mid, s.hi, right});
    }
    std::sort(out.begin(), out.end(),
              [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
    return out;
}

double refine_root(const Poly& p, const RootInterval& iv, double tol) {
    if (p.is_zero()) throw ZeroPolynomialError();
    if (tol <= 0) throw Error("refine_root: tol must be positive");
    Rational lo = iv.lo, hi = iv.hi;
    int slo = p.sign_at(lo), shi = p.sign_at(hi);
    if (slo == 0) return to_double(lo);
    if (shi == 0) return to_double(hi);
    if (slo == shi) {
        // even multiplicity: the root is also a root of p'
        const Poly d = p.derivative();
        if (d.is_zero() || d.sign_at(lo) * d.sign_at(hi) >= 0)
            throw NoSignChangeError("refine_root: interval does not bracket a sign change");
        return refine_root(d, {lo, hi, 1}, tol);
    }
    const Rational width_tol = rationalize(tol / 2, tol / 8);
    while (hi - lo > width_tol) {
        const Rational mid = (lo + hi) / 2;
        const int sm = p.sign_at(mid);
        if (sm == 0) return to_double(mid);
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
    }
    double x = to_double((lo + hi) / 2);
    // Newton polish only where the slope is safely nonzero
    const Poly d = p.derivative();
    const double dpx = d.eval_double(x);
    if (std::abs(dpx) > 1e-6) {
        for (int i = 0; i < 3; ++i) {
            const double dv = d.eval_double(x);
            if (std::abs(dv) <= 1e-6) break;
            const double step = p.eval_double(x) / dv;
            const double y = x - step;
            if (y < to_double(iv.lo) || y > to_double(iv.hi)) break;
            x = y;
            if (std::abs(step) < tol / 4) break;
        }
    }
    return x;
}

std::optional<Rational> exact_rational_root(const Poly& p, const RootInterval& iv,
                                            double refined) {
    // test continued-fraction convergents of the refined value by exact evaluation
    for (double tol : {1e-14, 1e-12, 1e-9, 1e-6}) {
        const Rational cand = rationalize(refined, tol);
        if (cand >= iv.lo && cand <= iv.hi && p.sign_at(cand) == 0) return cand;
    }
    return std::nullopt;
}

}  // namespace qes
