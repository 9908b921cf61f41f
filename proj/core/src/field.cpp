#include "vekua/field.hpp"

namespace vekua {

BicomplexField::BicomplexField(ScalarField2 sc, ScalarField2 vec)
    : BicomplexField(generic([sc = std::move(sc), vec = std::move(vec)](const auto& p) {
        using T = std::decay_t<decltype(p[0])>;
        return BicomplexT<T>{sc.eval(p), vec.eval(p)};
      })) {}

BicomplexField BicomplexField::constant(Bicomplex c) {
  return generic([c](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    return BicomplexT<T>{T(c.sc), T(c.vec)};
  });
}

BicomplexField BicomplexField::z() {
  return generic([](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    return BicomplexT<T>{p[0], p[1]};
  });
}

ScalarField2 BicomplexField::sc() const {
  return ScalarField2::generic([w = *this](const auto& p) { return w.eval(p).sc; });
}

ScalarField2 BicomplexField::vec() const {
  return ScalarField2::generic([w = *this](const auto& p) { return w.eval(p).vec; });
}

BicomplexField operator+(const BicomplexField& a, const BicomplexField& b) {
  return BicomplexField::generic([a, b](const auto& p) { return a.eval(p) + b.eval(p); });
}

BicomplexField operator-(const BicomplexField& a, const BicomplexField& b) {
  return BicomplexField::generic([a, b](const auto& p) { return a.eval(p) - b.eval(p); });
}

BicomplexField operator*(const BicomplexField& a, const BicomplexField& b) {
  return BicomplexField::generic([a, b](const auto& p) { return a.eval(p) * b.eval(p); });
}

BicomplexField operator*(const ScalarField2& s, const BicomplexField& a) {
  return BicomplexField::generic([s, a](const auto& p) { return s.eval(p) * a.eval(p); });
}

BicomplexField operator*(Bicomplex c, const BicomplexField& a) {
  return BicomplexField::generic([c, a](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    return BicomplexT<T>{T(c.sc), T(c.vec)} * a.eval(p);
  });
}

BicomplexField conj(const BicomplexField& a) {
  return BicomplexField::generic([a](const auto& p) { return conj(a.eval(p)); });
}

BicomplexField times_k(const BicomplexField& a) {
  return BicomplexField::generic([a](const auto& p) { return times_k(a.eval(p)); });
}

BicomplexField ipow(const BicomplexField& a, int n) {
  if (n < 0) throw std::invalid_argument("negative powers of bicomplex fields are not supported");
  return BicomplexField::generic([a, n](const auto& p) {
    using T = std::decay_t<decltype(p[0])>;
    const BicomplexT<T> base = a.eval(p);
    BicomplexT<T> out{T(1.0), T(0.0)};
    for (int j = 0; j < n; ++j) out = out * base;
    return out;
  });
}

}  // namespace vekua
