#pragma once

#include "bgraph/degree_sequence.hpp"
#include "bgraph/exact_count.hpp"
#include "bgraph/formulas.hpp"
#include "bgraph/instance.hpp"
#include "bgraph/monte_carlo.hpp"
#include "bgraph/numeric.hpp"
#include "bgraph/pairing.hpp"
#include "bgraph/switching.hpp"
