#pragma once

#include "suq2/core/check.hpp"
#include "suq2/core/dump.hpp"
#include "suq2/core/functional_calculus.hpp"
#include "suq2/core/lazy.hpp"
#include "suq2/core/operator.hpp"
#include "suq2/core/window.hpp"

#include "suq2/algebra/generators.hpp"
#include "suq2/algebra/relations.hpp"
#include "suq2/algebra/representations.hpp"
#include "suq2/algebra/words.hpp"

#include "suq2/comultiplication/continuity.hpp"
#include "suq2/comultiplication/delta0.hpp"
#include "suq2/comultiplication/delta_q.hpp"
#include "suq2/comultiplication/quotient_symbol.hpp"

#include "suq2/cocycle/f_vector.hpp"
#include "suq2/cocycle/intertwiner.hpp"
#include "suq2/cocycle/lambda.hpp"
#include "suq2/cocycle/stability.hpp"

#include "suq2/lift/counit.hpp"
#include "suq2/lift/extraction.hpp"
#include "suq2/lift/lift.hpp"
#include "suq2/lift/witness.hpp"
