#pragma once

#include "aperiodica/discrepancy.hpp"
#include "aperiodica/error.hpp"
#include "aperiodica/geometry.hpp"
#include "aperiodica/hullbuilder.hpp"
#include "aperiodica/lemmas.hpp"
#include "aperiodica/matcher.hpp"
#include "aperiodica/pointsets.hpp"
#include "aperiodica/scalar.hpp"
#include "aperiodica/search.hpp"
