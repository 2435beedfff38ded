#pragma once

// GRH-conditional bounds on the norms of prime ideals generating the class
// group of a number field Q[x]/(P): closed-form caps, the one-step and
// simplified integer scans, and the multistep negative-eigenvalue search
// with verifiable witnesses.

#include "genbound/algorithms.hpp"
#include "genbound/cli.hpp"
#include "genbound/closed_form_bounds.hpp"
#include "genbound/constants.hpp"
#include "genbound/errors.hpp"
#include "genbound/explicit_formula.hpp"
#include "genbound/field.hpp"
#include "genbound/io.hpp"
#include "genbound/modpoly.hpp"
#include "genbound/negative_eigenvalue.hpp"
#include "genbound/norm_table.hpp"
#include "genbound/polynomial.hpp"
#include "genbound/report.hpp"
#include "genbound/sieve.hpp"
#include "genbound/special_functions.hpp"
#include "genbound/sturm.hpp"
#include "genbound/weights.hpp"
