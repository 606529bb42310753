#include "kloos/eisenstein.hpp"

namespace kloos {

EisensteinInt EisensteinInt::root(int k) {
  switch (((k % 3) + 3) % 3) {
    case 0:
      return {1, 0};
    case 1:
      return {0, 1};
    default:
      return {-1, -1};
  }
}

EisensteinInt EisensteinInt::from_counts(const BigInt& n0, const BigInt& n1, const BigInt& n2) {
  // n0 + n1 w + n2 (-1 - w)
  return {n0 - n2, n1 - n2};
}

EisensteinInt& EisensteinInt::operator+=(const EisensteinInt& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

EisensteinInt& EisensteinInt::operator-=(const EisensteinInt& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

EisensteinInt& EisensteinInt::operator*=(const EisensteinInt& o) {
  // (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2,  w^2 = -1 - w
  BigInt bd = b_ * o.b_;
  BigInt a = a_ * o.a_ - bd;
  BigInt b = a_ * o.b_ + b_ * o.a_ - bd;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

std::string EisensteinInt::str() const {
  if (b_ == 0) return a_.get_str();
  std::string out = a_ == 0 ? std::string() : a_.get_str();
  if (b_ > 0 && !out.empty()) out += "+";
  if (b_ == -1) {
    out += "-";
  } else if (b_ != 1) {
    out += b_.get_str();
  }
  return out + "w";
}

EisensteinInt pow(EisensteinInt base, unsigned exp) {
  EisensteinInt out(1, 0);
  while (exp) {
    if (exp & 1u) out *= base;
    base *= base;
    exp >>= 1u;
  }
  return out;
}

}  // namespace kloos
