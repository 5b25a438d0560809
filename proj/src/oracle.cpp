#include "brex/oracle.hpp"

namespace brex {

std::string_view label_name(Label l) {
  switch (l) {
    case Label::False: return "False";
    case Label::True: return "True";
    default: return "Undetermined";
  }
}

}  // namespace brex
