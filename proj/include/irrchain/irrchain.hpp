#pragma once

#include "irrchain/chain.hpp"
#include "irrchain/criteria.hpp"
#include "irrchain/errors.hpp"
#include "irrchain/field.hpp"
#include "irrchain/format.hpp"
#include "irrchain/moebius.hpp"
#include "irrchain/numbers.hpp"
#include "irrchain/poly.hpp"
#include "irrchain/transform.hpp"
