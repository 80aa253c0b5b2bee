#include "trycolor/field.hpp"

#include <algorithm>
#include <numeric>

#include "trycolor/errors.hpp"

namespace trycolor {

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

PrimeField::PrimeField(long long q) : q_(q) {
    if (!is_prime(q)) throw ParameterError("field size " + std::to_string(q) + " is not prime");
}

long long Polynomial::eval(const PrimeField& field, long long x) const {
    long long acc = 0;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it)
        acc = field.add(field.mul(acc, x), *it);
    return acc;
}

int Polynomial::degree() const {
    for (int i = static_cast<int>(coefficients.size()) - 1; i > 0; --i)
        if (coefficients[i] != 0) return i;
    return 0;
}

long long choose_prime(int f, int delta, int d) {
    if (f < 1) throw ParameterError("choose_prime: f must be >= 1");
    if (d < 0 || d > delta - 1) throw ParameterError("choose_prime: need 0 <= d <= delta-1");
    if (delta <= d + 1) throw ParameterError("choose_prime: need delta/(d+1) > 1");
    // Smallest q with q*(d+1) > 2*f*delta.
    long long lower = 2ll * f * delta;
    long long q = lower / (d + 1) + 1;
    while (!is_prime(q) || q * (d + 1) <= lower) ++q;
    if (q * (d + 1) >= 4ll * f * delta)
        throw ContradictionError("choose_prime: no prime in the Bertrand interval");
    return q;
}

int degree_bound(int m, int delta, int d) {
    if (m < 1) throw ParameterError("degree_bound: m must be >= 1");
    if (delta <= d + 1) throw ParameterError("degree_bound: need delta/(d+1) > 1");
    // Smallest f >= 1 with delta^f >= m * (d+1)^f. Exact integer iteration on
    // the gcd-reduced base a/b; bases very close to 1 combined with large m
    // can push the exact powers past 128 bits, which is far outside any
    // supported regime and rejected rather than approximated.
    long long a = delta, b = d + 1;
    long long g = std::gcd(a, b);
    a /= g;
    b /= g;
    int f = 1;
    unsigned __int128 num = a, den = b;
    const unsigned __int128 cap = (unsigned __int128)1 << 90;
    while (num < den * static_cast<unsigned __int128>(m)) {
        if (num > cap / static_cast<unsigned __int128>(a) ||
            den > cap / static_cast<unsigned __int128>(b) ||
            den > cap / static_cast<unsigned __int128>(m))
            throw CapacityError("degree_bound: base too close to 1 for exact evaluation");
        ++f;
        num *= a;
        den *= b;
    }
    return f;
}

SequenceFamily::SequenceFamily(int m, int delta, int d, int k)
    : m_(m),
      delta_(delta),
      d_(d),
      k_(k),
      f_(degree_bound(m, delta, d)),
      field_(choose_prime(f_, delta, d)) {
    if (k_ < 1) throw ParameterError("sequence family: batch size k must be >= 1");
    // q^(f+1) >= m so that every input color has a distinct polynomial; holds
    // by the choice of f since q > delta/(d+1).
    unsigned __int128 space = 1;
    bool enough = false;
    for (int i = 0; i <= f_; ++i) {
        space *= static_cast<unsigned __int128>(field_.size());
        if (space >= static_cast<unsigned __int128>(m_)) {
            enough = true;
            break;
        }
    }
    if (!enough) throw ContradictionError("sequence family: q^(f+1) < m");
}

int SequenceFamily::batch_count() const {
    return static_cast<int>((q() + k_ - 1) / k_);
}

Polynomial SequenceFamily::assign_polynomial(int input_color) const {
    if (input_color < 0 || input_color >= m_)
        throw ParameterError("assign_polynomial: color outside palette");
    // Base-q digits of the color, least significant digit = a_0; injective
    // over [0, m) and computable with no communication.
    Polynomial p;
    p.coefficients.assign(f_ + 1, 0);
    long long rest = input_color;
    for (int i = 0; i <= f_ && rest > 0; ++i) {
        p.coefficients[i] = rest % q();
        rest /= q();
    }
    if (rest > 0) throw CapacityError("assign_polynomial: color exceeds q^(f+1)");
    return p;
}

std::vector<std::pair<int, int>> SequenceFamily::color_sequence(int input_color) const {
    Polynomial p = assign_polynomial(input_color);
    std::vector<std::pair<int, int>> seq;
    seq.reserve(q());
    for (long long x = 0; x < q(); ++x)
        seq.emplace_back(static_cast<int>(x % k_), static_cast<int>(p.eval(field_, x)));
    return seq;
}

std::vector<std::pair<int, int>> SequenceFamily::batch(int input_color, int j) const {
    if (j < 1 || j > batch_count()) throw ParameterError("batch index out of range");
    Polynomial p = assign_polynomial(input_color);
    long long from = static_cast<long long>(j - 1) * k_;
    long long to = std::min<long long>(from + k_, q());
    std::vector<std::pair<int, int>> out;
    out.reserve(to - from);
    for (long long x = from; x < to; ++x)
        out.emplace_back(static_cast<int>(x % k_), static_cast<int>(p.eval(field_, x)));
    return out;
}

int count_intersections(const Polynomial& p1, const Polynomial& p2, const PrimeField& field) {
    auto trimmed = [](const Polynomial& p) {
        std::vector<long long> c = p.coefficients;
        while (c.size() > 1 && c.back() == 0) c.pop_back();
        return c;
    };
    if (trimmed(p1) == trimmed(p2))
        throw ParameterError("count_intersections requires distinct polynomials");
    int count = 0;
    for (long long x = 0; x < field.size(); ++x)
        if (p1.eval(field, x) == p2.eval(field, x)) ++count;
    return count;
}

}  // namespace trycolor
