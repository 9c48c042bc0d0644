#pragma once

#include <cmath>
#include <string>

#include "hermeig/errors.hpp"

namespace hermeig {

// Endpoint on the extended real line. Infinite endpoints carry an explicit
// tag instead of a sentinel float so that weight evaluation never sees an
// infinity and truncation decisions stay visible at call sites.
class ExtendedReal {
  public:
    ExtendedReal(double v) : tag_(Tag::Finite), value_(v) {  // NOLINT: implicit by design
        if (!std::isfinite(v)) throw ValidationError("ExtendedReal: finite constructor given non-finite value");
    }

    static ExtendedReal neg_inf() { return ExtendedReal(Tag::NegInf); }
    static ExtendedReal pos_inf() { return ExtendedReal(Tag::PosInf); }

    bool finite() const { return tag_ == Tag::Finite; }
    bool is_neg_inf() const { return tag_ == Tag::NegInf; }
    bool is_pos_inf() const { return tag_ == Tag::PosInf; }

    double value() const {
        if (!finite()) throw ValidationError("ExtendedReal: value() on infinite endpoint");
        return value_;
    }

    // Finite surrogate used by truncating solvers; |x| = cut for infinities.
    double truncated(double cut) const {
        switch (tag_) {
            case Tag::NegInf: return -cut;
            case Tag::PosInf: return cut;
            default: return value_;
        }
    }

    bool operator<=(const ExtendedReal& o) const {
        if (is_neg_inf() || o.is_pos_inf()) return true;
        if (is_pos_inf()) return o.is_pos_inf();
        if (o.is_neg_inf()) return is_neg_inf();
        return value_ <= o.value_;
    }

    std::string str() const {
        if (is_neg_inf()) return "-inf";
        if (is_pos_inf()) return "+inf";
        return std::to_string(value_);
    }

  private:
    enum class Tag { Finite, NegInf, PosInf };
    explicit ExtendedReal(Tag t) : tag_(t), value_(0.0) {}
    Tag tag_;
    double value_;
};

}  // namespace hermeig
