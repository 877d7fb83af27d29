// Umbrella header.
#ifndef HENKIN_HENKIN_HPP
#define HENKIN_HENKIN_HPP

#include "henkin/denotation.hpp"
#include "henkin/distinguish.hpp"
#include "henkin/dlo.hpp"
#include "henkin/enumerate.hpp"
#include "henkin/error.hpp"
#include "henkin/external_oracle.hpp"
#include "henkin/finite_algebra.hpp"
#include "henkin/finite_model.hpp"
#include "henkin/formula.hpp"
#include "henkin/formula_algebra.hpp"
#include "henkin/generic_filter.hpp"
#include "henkin/kcode.hpp"
#include "henkin/oracle.hpp"
#include "henkin/order_types.hpp"
#include "henkin/parse.hpp"
#include "henkin/repr.hpp"
#include "henkin/set_algebra.hpp"
#include "henkin/signature.hpp"
#include "henkin/substitute.hpp"
#include "henkin/theory_file.hpp"
#include "henkin/transformation.hpp"
#include "henkin/type_set.hpp"
#include "henkin/types.hpp"

#endif
