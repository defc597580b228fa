#include "ellflow/complex.hpp"

#include "ellflow/error.hpp"

namespace ellflow {

Complex checked_div(Complex num, Complex den) {
  if (den == Complex(0.0, 0.0)) throw Error(ErrorKind::DivisionByZero, "complex division by zero");
  return num / den;
}

}  // namespace ellflow
