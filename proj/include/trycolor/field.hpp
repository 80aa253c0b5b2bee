#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace trycolor {

// Prime field F_q with elements {0, ..., q-1}; primality is verified at
// construction. Immutable.
class PrimeField {
public:
    explicit PrimeField(long long q);

    long long size() const { return q_; }
    long long add(long long a, long long b) const { return (a + b) % q_; }
    long long mul(long long a, long long b) const { return (a * b) % q_; }

private:
    long long q_;
};

bool is_prime(long long n);

// Coefficients a_0..a_f, lowest degree first, all in [0, q).
struct Polynomial {
    std::vector<long long> coefficients;

    long long eval(const PrimeField& field, long long x) const;
    // Degree with trailing zero coefficients ignored; the zero polynomial has
    // degree 0.
    int degree() const;
    bool operator==(const Polynomial&) const = default;
};

// Smallest prime strictly greater than 2*f*delta/(d+1); by Bertrand's
// postulate it is strictly below 4*f*delta/(d+1). Bounds are exact rational
// comparisons, no floating point.
long long choose_prime(int f, int delta, int d);

// Smallest f >= 1 with (delta/(d+1))^f >= m, i.e. the ceiling of the
// base-(delta/(d+1)) logarithm of m.
int degree_bound(int m, int delta, int d);

// Parameters of the per-color trial sequences: every input color in [0, m)
// is mapped to a distinct polynomial of degree <= f over F_q, and its
// sequence is (x mod k, p(x)) for x = 0..q-1, processed in batches of k.
class SequenceFamily {
public:
    SequenceFamily(int m, int delta, int d, int k);

    int palette() const { return m_; }
    int delta() const { return delta_; }
    int defect() const { return d_; }
    int batch_size() const { return k_; }
    int degree_cap() const { return f_; }
    const PrimeField& field() const { return field_; }
    long long q() const { return field_.size(); }
    // Number of batches a full sequence spans: ceil(q / k).
    int batch_count() const;

    Polynomial assign_polynomial(int input_color) const;
    std::vector<std::pair<int, int>> color_sequence(int input_color) const;
    // Tuples of batch j (1-based): sequence positions [(j-1)k, jk).
    std::vector<std::pair<int, int>> batch(int input_color, int j) const;

private:
    int m_;
    int delta_;
    int d_;
    int k_;
    int f_;
    PrimeField field_;
};

// |{x in F_q : p1(x) = p2(x)}| by exhaustive evaluation. Requires p1 != p2 as
// polynomials; the count never exceeds max(deg p1, deg p2).
int count_intersections(const Polynomial& p1, const Polynomial& p2, const PrimeField& field);

}  // namespace trycolor
