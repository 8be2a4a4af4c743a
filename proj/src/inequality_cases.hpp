#pragma once

#include "cmgamma/inequalities.hpp"

namespace cmgamma::ineq::detail {

Registry build_standard_registry();

}  // namespace cmgamma::ineq::detail
