#ifndef OBLAT_BIGFLOAT_HPP
#define OBLAT_BIGFLOAT_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <string>
#include <utility>

namespace oblat {

// RAII wrapper around mpfr_t.  Mixed-precision arithmetic promotes the
// result to the larger operand precision; rounding is to-nearest-even
// except where a function says otherwise.
class BigFloat {
  public:
    static constexpr mpfr_prec_t default_prec = 256;

    explicit BigFloat(mpfr_prec_t prec = default_prec) {
        mpfr_init2(v_, prec < MPFR_PREC_MIN ? MPFR_PREC_MIN : prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, o.prec());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, o.prec());
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, o.prec());
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat of(double d, mpfr_prec_t prec = default_prec) {
        BigFloat r(prec);
        mpfr_set_d(r.v_, d, MPFR_RNDN);
        return r;
    }
    static BigFloat of(long n, mpfr_prec_t prec = default_prec) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, n, MPFR_RNDN);
        return r;
    }
    static BigFloat of(const mpz_class& z, mpfr_prec_t prec = default_prec) {
        BigFloat r(prec);
        mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static BigFloat of(const mpq_class& q, mpfr_prec_t prec = default_prec) {
        BigFloat r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    int sgn() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    double d() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Nearest integer, ties away from zero (mpfr_round semantics); exact.
    mpz_class round_away() const {
        mpfr_exp_t e = mpfr_zero_p(v_) ? 1 : mpfr_get_exp(v_);
        mpfr_t t;
        mpfr_init2(t, std::max<mpfr_prec_t>(prec(), e + 2));
        mpfr_round(t, v_);
        mpz_class z;
        mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
        mpfr_clear(t);
        return z;
    }

    std::string str(int digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator-(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    BigFloat& operator+=(const BigFloat& b) { return *this = *this + b; }
    BigFloat& operator-=(const BigFloat& b) { return *this = *this - b; }
    BigFloat& operator*=(const BigFloat& b) { return *this = *this * b; }
    BigFloat& operator/=(const BigFloat& b) { return *this = *this / b; }

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    friend BigFloat abs(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sqrt(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

  private:
    mpfr_t v_;
};

} // namespace oblat

#endif
