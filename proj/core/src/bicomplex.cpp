#include "vekua/bicomplex.hpp"

#include <ostream>

namespace vekua {

std::ostream& operator<<(std::ostream& os, const Bicomplex& q) {
  return os << '(' << q.sc.real() << (q.sc.imag() < 0 ? "-" : "+") << std::abs(q.sc.imag())
            << "i) + (" << q.vec.real() << (q.vec.imag() < 0 ? "-" : "+")
            << std::abs(q.vec.imag()) << "i)k";
}

}  // namespace vekua
