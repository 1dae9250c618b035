/*
 * Exact field scalars: rationals (int64 fast path, GMP fallback) and
 * prime fields F_p for p < 2^31.  A scalar carries its field; mixing
 * fields in one operation throws.
 */
#pragma once

#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace tilt {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldSpec {
    std::uint32_t ch = 0;  // 0 = rationals, otherwise a prime

    bool operator==(const FieldSpec&) const = default;
    bool is_q() const { return ch == 0; }
};

inline FieldSpec field_q() { return FieldSpec{0}; }
inline FieldSpec field_fp(std::uint32_t p) { return FieldSpec{p}; }

inline bool is_prime_u32(std::uint32_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint64_t d = 3; d * d <= p; d += 2)
        if (p % d == 0) return false;
    return true;
}

namespace detail {

using i128 = __int128;

inline i128 gcd_i128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline bool fits_i64(i128 v) {
    return v >= i128(INT64_MIN) && v <= i128(INT64_MAX);
}

inline void mpz_from_i128(mpz_class& out, i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -(unsigned __int128)v : (unsigned __int128)v;
    mpz_class hi((unsigned long)(u >> 64));
    mpz_class lo((unsigned long)(u & 0xffffffffffffffffULL));
    out = (hi << 64) + lo;
    if (neg) out = -out;
}

inline mpq_class mpq_from_i128(i128 n, i128 d) {
    mpz_class zn, zd;
    mpz_from_i128(zn, n);
    mpz_from_i128(zd, d);
    mpq_class q(zn);
    q /= mpq_class(zd);
    q.canonicalize();
    return q;
}

inline std::int64_t mod_pos(std::int64_t v, std::int64_t p) {
    std::int64_t r = v % p;
    return r < 0 ? r + p : r;
}

// inverse of a mod p, a != 0
inline std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
        std::int64_t q = r / nr;
        std::int64_t tmp = t - q * nt;
        t = nt;
        nt = tmp;
        tmp = r - q * nr;
        r = nr;
        nr = tmp;
    }
    if (r != 1) throw error("inv_mod: not invertible");
    return t < 0 ? t + p : t;
}

}  // namespace detail

class Scalar {
  public:
    Scalar() = default;  // rational zero

    static Scalar zero(FieldSpec f) { return from_int(0, f); }
    static Scalar one(FieldSpec f) { return from_int(1, f); }

    static Scalar from_int(std::int64_t v, FieldSpec f) {
        Scalar s;
        s.ch_ = f.ch;
        if (f.ch == 0) {
            s.num_ = v;
            s.den_ = 1;
        } else {
            s.num_ = detail::mod_pos(v, f.ch);
            s.den_ = 1;
        }
        return s;
    }

    static Scalar rational(std::int64_t n, std::int64_t d, FieldSpec f) {
        if (d == 0) throw error("scalar: zero denominator");
        if (f.ch == 0) {
            Scalar s;
            s.ch_ = 0;
            s.set_q_i128(detail::i128(n), detail::i128(d));
            return s;
        }
        std::int64_t p = f.ch;
        std::int64_t dd = detail::mod_pos(d, p);
        if (dd == 0) throw error("scalar: denominator vanishes mod p");
        std::int64_t nn = detail::mod_pos(n, p);
        Scalar s;
        s.ch_ = f.ch;
        s.num_ = (std::int64_t)(((unsigned __int128)nn * detail::inv_mod(dd, p)) % p);
        s.den_ = 1;
        return s;
    }

    static Scalar from_mpq(const mpq_class& q, FieldSpec f) {
        if (f.ch != 0) {
            mpz_class n = q.get_num() % f.ch;
            mpz_class d = q.get_den() % f.ch;
            std::int64_t ni = detail::mod_pos(n.get_si(), f.ch);
            std::int64_t di = detail::mod_pos(d.get_si(), f.ch);
            if (di == 0) throw error("scalar: denominator vanishes mod p");
            Scalar s;
            s.ch_ = f.ch;
            s.num_ = (std::int64_t)(((unsigned __int128)ni * detail::inv_mod(di, f.ch)) % f.ch);
            return s;
        }
        Scalar s;
        s.big_ = std::make_unique<mpq_class>(q);
        s.big_->canonicalize();
        s.demote();
        return s;
    }

    static Scalar parse(const std::string& text, FieldSpec f) {
        mpq_class q;
        if (q.set_str(text, 10) != 0) throw error("scalar: cannot parse '" + text + "'");
        q.canonicalize();
        return from_mpq(q, f);
    }

    Scalar(const Scalar& o) : num_(o.num_), den_(o.den_), ch_(o.ch_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Scalar(Scalar&&) noexcept = default;
    Scalar& operator=(const Scalar& o) {
        if (this != &o) {
            num_ = o.num_;
            den_ = o.den_;
            ch_ = o.ch_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Scalar& operator=(Scalar&&) noexcept = default;

    FieldSpec field() const { return FieldSpec{ch_}; }

    bool is_zero() const { return big_ ? sgn(*big_) == 0 : num_ == 0; }
    bool is_one() const {
        if (big_) return *big_ == 1;
        return num_ == 1 && den_ == 1;
    }

    bool operator==(const Scalar& o) const {
        if (ch_ != o.ch_) return false;
        if (!big_ && !o.big_) return num_ == o.num_ && den_ == o.den_;
        return as_mpq() == o.as_mpq();
    }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        a.check(b);
        if (a.ch_ != 0) return fp(detail::mod_pos(a.num_ + b.num_, a.ch_), a.ch_);
        if (!a.big_ && !b.big_) {
            detail::i128 n = detail::i128(a.num_) * b.den_ + detail::i128(b.num_) * a.den_;
            detail::i128 d = detail::i128(a.den_) * b.den_;
            return q_i128(n, d);
        }
        return from_mpq(a.as_mpq() + b.as_mpq(), a.field());
    }

    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        a.check(b);
        if (a.ch_ != 0) return fp(detail::mod_pos(a.num_ - b.num_, a.ch_), a.ch_);
        if (!a.big_ && !b.big_) {
            detail::i128 n = detail::i128(a.num_) * b.den_ - detail::i128(b.num_) * a.den_;
            detail::i128 d = detail::i128(a.den_) * b.den_;
            return q_i128(n, d);
        }
        return from_mpq(a.as_mpq() - b.as_mpq(), a.field());
    }

    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        a.check(b);
        if (a.ch_ != 0)
            return fp((std::int64_t)(((unsigned __int128)a.num_ * b.num_) % a.ch_), a.ch_);
        if (!a.big_ && !b.big_) {
            detail::i128 n = detail::i128(a.num_) * b.num_;
            detail::i128 d = detail::i128(a.den_) * b.den_;
            return q_i128(n, d);
        }
        return from_mpq(a.as_mpq() * b.as_mpq(), a.field());
    }

    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        a.check(b);
        if (b.is_zero()) throw error("scalar: division by zero");
        if (a.ch_ != 0)
            return fp((std::int64_t)(((unsigned __int128)a.num_ * detail::inv_mod(b.num_, a.ch_)) % a.ch_),
                      a.ch_);
        if (!a.big_ && !b.big_) {
            detail::i128 n = detail::i128(a.num_) * b.den_;
            detail::i128 d = detail::i128(a.den_) * b.num_;
            return q_i128(n, d);
        }
        return from_mpq(a.as_mpq() / b.as_mpq(), a.field());
    }

    Scalar operator-() const {
        if (ch_ != 0) return fp(detail::mod_pos(-num_, ch_), ch_);
        if (!big_) {
            if (num_ == INT64_MIN) return q_i128(-detail::i128(num_), detail::i128(den_));
            Scalar s(*this);
            s.num_ = -s.num_;
            return s;
        }
        return from_mpq(-*big_, field());
    }

    Scalar inv() const {
        if (is_zero()) throw error("scalar: inverse of zero");
        return one(field()) / *this;
    }

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

    mpq_class as_mpq() const {
        if (big_) return *big_;
        return detail::mpq_from_i128(num_, den_);
    }

    // For rationals: exact integer check + value.
    bool is_integer() const {
        if (ch_ != 0) return true;
        if (!big_) return den_ == 1;
        return big_->get_den() == 1;
    }
    std::int64_t as_int() const {
        if (ch_ != 0) return num_;
        if (!is_integer()) throw error("scalar: not an integer");
        if (!big_) return num_;
        if (!big_->get_num().fits_slong_p()) throw error("scalar: integer overflow");
        return big_->get_num().get_si();
    }

    std::string str() const {
        if (ch_ != 0) return std::to_string(num_);
        mpq_class q = as_mpq();
        return q.get_str();
    }

  private:
    static Scalar fp(std::int64_t r, std::uint32_t p) {
        Scalar s;
        s.ch_ = p;
        s.num_ = r;
        s.den_ = 1;
        return s;
    }

    static Scalar q_i128(detail::i128 n, detail::i128 d) {
        Scalar s;
        s.ch_ = 0;
        s.set_q_i128(n, d);
        return s;
    }

    void set_q_i128(detail::i128 n, detail::i128 d) {
        if (d == 0) throw error("scalar: zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        detail::i128 g = detail::gcd_i128(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        if (detail::fits_i64(n) && detail::fits_i64(d)) {
            num_ = (std::int64_t)n;
            den_ = (std::int64_t)d;
            big_.reset();
        } else {
            big_ = std::make_unique<mpq_class>(detail::mpq_from_i128(n, d));
        }
    }

    void demote() {
        if (!big_) return;
        if (big_->get_num().fits_slong_p() && big_->get_den().fits_slong_p()) {
            num_ = big_->get_num().get_si();
            den_ = big_->get_den().get_si();
            big_.reset();
        }
    }

    void check(const Scalar& o) const {
        if (ch_ != o.ch_) throw error("scalar: field mismatch");
    }

    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    std::unique_ptr<mpq_class> big_;
    std::uint32_t ch_ = 0;
};

// Deterministic PRNG (splitmix64).
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    // uniform integer in [-bound, bound]
    std::int64_t int_in(std::int64_t bound) {
        return (std::int64_t)below(2 * (std::uint64_t)bound + 1) - bound;
    }
};

}  // namespace tilt
