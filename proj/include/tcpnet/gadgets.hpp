#pragma once

// CNF -> TCP-net reductions used as adversarial test factories. The net has
// a conditionally directed cycle exactly when the formula is satisfiable.
//
// Formula variables become binary variables "x1".."xn" with domain {f, t}
// (value index 1 is true), clauses become "C1".."Cm". The multi-cycle
// variant adds literal variables "Lj_k"; the one-cycle variant adds the
// dummy variable "C". A single-clause formula is built from two copies of
// its clause, since one clause would put an i-arc and a ci-arc on the same
// pair of variables.

#include "tcpnet/model.hpp"
#include "tcpnet/sat.hpp"

namespace tcpnet {

enum class GadgetVariant { MultiCycle, OneCycle };

/// Throws WidthExceeded for clauses longer than three literals and
/// InvalidArgument for an empty formula or an empty clause.
TcpNet gadget_from_cnf(const CnfFormula& f, GadgetVariant variant);

}  // namespace tcpnet
