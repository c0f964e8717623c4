#pragma once

#include <ostream>

#include "presym/exterior/graded_element.hpp"
#include "presym/linalg/subspace.hpp"

// gtest falls back to byte dumps without these.
namespace presym {

template <class Tag>
void PrintTo(const GradedElement<Tag>& e, std::ostream* os) {
  *os << e.to_string();
}

inline void PrintTo(const RationalFunction& s, std::ostream* os) { *os << s.to_string(); }

template <class F>
void PrintTo(const Matrix<F>& m, std::ostream* os) {
  *os << m.to_string();
}

template <class F>
void PrintTo(const Subspace<F>& s, std::ostream* os) {
  *os << s.basis().to_string();
}

}  // namespace presym
