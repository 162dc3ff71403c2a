#pragma once

#include "asym.hpp"
#include "coulomb.hpp"
#include "errors.hpp"
#include "heun.hpp"
#include "ladder.hpp"
#include "opseq.hpp"
#include "painleve.hpp"
#include "quadrature.hpp"
#include "ratfunc.hpp"
#include "rational.hpp"
#include "real.hpp"
#include "specfun.hpp"
#include "weights.hpp"
