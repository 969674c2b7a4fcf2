#pragma once

// Finite fields F_q, q = p^k <= 2^16, with full exp/log tables. Elements
// are encoded as integers in [0,q): e = sum c_i p^i where (c_0..c_{k-1})
// are the coefficients of the polynomial representative (low to high).

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace jlab {

class FiniteField {
public:
    int p = 0, k = 0, q = 0;
    std::vector<int> poly;  // defining monic irreducible, coeffs low-to-high, size k+1

    explicit FiniteField(int q_) : q(q_) {
        if (q < 2 || q > 65536) throw std::invalid_argument("field order out of range");
        int m = q;
        for (int d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                p = d;
                break;
            }
        if (p == 0) p = m;
        k = 0;
        while (m > 1) {
            if (m % p != 0) throw std::invalid_argument("field order is not a prime power");
            m /= p;
            ++k;
        }
        if (k == 1)
            poly = {0, 1};
        else
            poly = smallest_irreducible();
        build_tables();
    }

    int add(int a, int b) const {
        check(a);
        check(b);
        int out = 0, mult = 1;
        while (a > 0 || b > 0) {
            out += ((a % p + b % p) % p) * mult;
            a /= p;
            b /= p;
            mult *= p;
        }
        return out;
    }

    int neg(int a) const {
        check(a);
        int out = 0, mult = 1;
        while (a > 0) {
            out += ((p - a % p) % p) * mult;
            a /= p;
            mult *= p;
        }
        return out;
    }

    int sub(int a, int b) const { return add(a, neg(b)); }

    int mul(int a, int b) const {
        check(a);
        check(b);
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q - 1)];
    }

    int inv(int a) const {
        check(a);
        if (a == 0) throw std::domain_error("division by zero");
        return exp_[(q - 1 - log_[a]) % (q - 1)];
    }

    int pow(int a, long long e) const {
        check(a);
        if (a == 0) {
            if (e <= 0) throw std::domain_error("zero to a non-positive power");
            return 0;
        }
        long long r = ((long long)log_[a] * (e % (q - 1))) % (q - 1);
        if (r < 0) r += q - 1;
        return exp_[r];
    }

    // smallest element (in encoding order) generating the multiplicative group
    int generator() const { return gen_; }

    // discrete logarithm base generator(), defined for nonzero elements
    int dlog(int a) const {
        check(a);
        if (a == 0) throw std::domain_error("log of zero");
        return log_[a];
    }

private:
    std::vector<int> exp_, log_;
    int gen_ = 0;

    void check(int a) const {
        if (a < 0 || a >= q) throw std::invalid_argument("field element out of range");
    }

    // polynomial helpers over F_p, coefficients low-to-high
    static std::vector<int> trim(std::vector<int> v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
        return v;
    }

    std::vector<int> poly_mul(const std::vector<int>& a, const std::vector<int>& b) const {
        if (a.empty() || b.empty()) return {};
        std::vector<int> out(a.size() + b.size() - 1, 0);
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
        return trim(out);
    }

    std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& m) const {
        a = trim(a);
        std::vector<int> mm = trim(m);
        int inv_lead = 1;
        for (int t = 1; t < p; ++t)
            if (t * mm.back() % p == 1) inv_lead = t;
        while (a.size() >= mm.size()) {
            int c = a.back() * inv_lead % p;
            size_t shift = a.size() - mm.size();
            for (size_t i = 0; i < mm.size(); ++i)
                a[shift + i] = ((a[shift + i] - c * mm[i]) % p + p) % p;
            a = trim(a);
        }
        return a;
    }

    // lexicographically smallest (coefficients compared low-to-high) monic
    // irreducible of degree k, found by trial division
    std::vector<int> smallest_irreducible() const {
        std::vector<std::vector<int>> divisors;  // monic, degree 1..k/2
        for (int d = 1; d <= k / 2; ++d) {
            long long total = 1;
            for (int i = 0; i < d; ++i) total *= p;
            for (long long t = 0; t < total; ++t) {
                std::vector<int> f(d + 1, 0);
                long long v = t;
                for (int i = 0; i < d; ++i) {
                    f[i] = (int)(v % p);
                    v /= p;
                }
                f[d] = 1;
                divisors.push_back(std::move(f));
            }
        }
        long long total = 1;
        for (int i = 0; i < k; ++i) total *= p;
        // digit c_0 varies slowest: low-to-high lexicographic order
        for (long long t = 0; t < total; ++t) {
            std::vector<int> f(k + 1, 0);
            long long v = t;
            for (int i = k - 1; i >= 0; --i) {
                f[i] = (int)(v % p);
                v /= p;
            }
            f[k] = 1;
            bool irreducible = true;
            for (auto& d : divisors)
                if (poly_mod(f, d).empty()) {
                    irreducible = false;
                    break;
                }
            if (irreducible) return f;
        }
        throw std::logic_error("no irreducible polynomial found");
    }

    std::vector<int> decode(int e) const {
        std::vector<int> out;
        while (e > 0) {
            out.push_back(e % p);
            e /= p;
        }
        return out;
    }

    int encode(const std::vector<int>& v) const {
        int out = 0;
        for (size_t i = v.size(); i-- > 0;) out = out * p + v[i];
        return out;
    }

    int mul_slow(int a, int b) const {
        return encode(poly_mod(poly_mul(decode(a), decode(b)), poly));
    }

    void build_tables() {
        // prime factors of q-1 for order tests
        std::vector<int> primes;
        int m = q - 1;
        for (int d = 2; d * d <= m; ++d)
            if (m % d == 0) {
                primes.push_back(d);
                while (m % d == 0) m /= d;
            }
        if (m > 1) primes.push_back(m);
        auto pow_slow = [&](int a, int e) {
            int r = 1;
            while (e > 0) {
                if (e & 1) r = mul_slow(r, a);
                a = mul_slow(a, a);
                e >>= 1;
            }
            return r;
        };
        gen_ = -1;
        for (int g = 1; g < q; ++g) {
            bool ok = true;
            for (int f : primes)
                if (pow_slow(g, (q - 1) / f) == 1) {
                    ok = false;
                    break;
                }
            if (ok) {
                gen_ = g;
                break;
            }
        }
        if (gen_ < 0) throw std::logic_error("no multiplicative generator found");
        exp_.assign(q - 1, 0);
        log_.assign(q, -1);
        int e = 1;
        for (int i = 0; i < q - 1; ++i) {
            exp_[i] = e;
            log_[e] = i;
            e = mul_slow(e, gen_);
        }
        if (e != 1) throw std::logic_error("generator order mismatch");
        for (int a = 1; a < q; ++a)
            if (log_[a] < 0) throw std::logic_error("multiplicative group is not cyclic");
    }
};

}  // namespace jlab
