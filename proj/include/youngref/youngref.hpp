#pragma once

#include "conjecture_search.hpp"
#include "errors.hpp"
#include "matrix_document.hpp"
#include "operator_inequalities.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "scalar_core.hpp"
#include "spd_linalg.hpp"
