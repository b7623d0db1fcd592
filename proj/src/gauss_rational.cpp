#include "balk1/gauss_rational.hpp"

#include <stdexcept>

namespace balk1 {

GaussRational::GaussRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
    canonicalize();
}

void GaussRational::canonicalize() {
    re_.canonicalize();
    im_.canonicalize();
}

GaussRational GaussRational::inverse() const {
    if (is_zero()) throw std::domain_error("GaussRational: division by zero");
    mpq_class n = re_ * re_ + im_ * im_;
    return {re_ / n, -im_ / n};
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
    if (sgn(o.im_) == 0) {
        if (sgn(o.re_) == 0) throw std::domain_error("GaussRational: division by zero");
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

std::string GaussRational::str() const {
    auto part = [](const mpq_class& q) { return q.get_str(); };
    if (sgn(im_) == 0) return part(re_);
    std::string imag;
    if (im_ == 1)
        imag = "i";
    else if (im_ == -1)
        imag = "-i";
    else
        imag = part(im_) + "i";
    if (sgn(re_) == 0) return imag;
    if (imag.front() != '-') imag = "+" + imag;
    return part(re_) + imag;
}

}  // namespace balk1
