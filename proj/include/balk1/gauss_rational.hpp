#pragma once

#include <gmpxx.h>

#include <string>

namespace balk1 {

/// Exact element of Q(i), stored as a pair of GMP rationals.
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
    GaussRational(mpq_class re, mpq_class im = 0);

    static GaussRational imag_unit() { return {0, 1}; }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussRational conj() const { return {re_, -im_}; }
    GaussRational inverse() const;

    GaussRational& operator+=(const GaussRational& o);
    GaussRational& operator-=(const GaussRational& o);
    GaussRational& operator*=(const GaussRational& o);
    GaussRational& operator/=(const GaussRational& o);

    friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
    GaussRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

    /// "3/2", "-i", "1/2+3i". Parseable by the starpoly expression parser.
    std::string str() const;

private:
    void canonicalize();

    mpq_class re_ = 0;
    mpq_class im_ = 0;
};

}  // namespace balk1
