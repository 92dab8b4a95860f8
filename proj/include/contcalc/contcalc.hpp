#pragma once

#include "contcalc/diagnostic.hpp"
#include "contcalc/equivalence.hpp"
#include "contcalc/evaluator.hpp"
#include "contcalc/expected.hpp"
#include "contcalc/parser.hpp"
#include "contcalc/stdlib.hpp"
#include "contcalc/term.hpp"
