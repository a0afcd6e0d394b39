#pragma once

#include "coxops/arrangement.hpp"
#include "coxops/bases.hpp"
#include "coxops/combinatorics.hpp"
#include "coxops/diffop.hpp"
#include "coxops/errors.hpp"
#include "coxops/group.hpp"
#include "coxops/json_io.hpp"
#include "coxops/kind.hpp"
#include "coxops/modular.hpp"
#include "coxops/multi_index.hpp"
#include "coxops/parallel.hpp"
#include "coxops/poly_matrix.hpp"
#include "coxops/polynomial.hpp"
#include "coxops/rational.hpp"
#include "coxops/schur.hpp"
#include "coxops/text.hpp"
