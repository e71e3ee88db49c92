#include "mpfj/recursion.hpp"

namespace mpfj {

const char* method_name(StepMethod method) {
  switch (method) {
    case StepMethod::explicit_form:
      return "explicit";
    case StepMethod::implicit_form:
      return "implicit";
    case StepMethod::extended_form:
      return "extended";
  }
  return "unknown";
}

}  // namespace mpfj
