#pragma once

#include "katpd/symbols.hpp"
#include "katpd/bool_expr.hpp"
#include "katpd/kat_expr.hpp"
#include "katpd/syntax.hpp"
#include "katpd/assumption_set.hpp"
#include "katpd/guarded.hpp"
#include "katpd/guarded_automaton.hpp"
#include "katpd/derivatives.hpp"
#include "katpd/equivalence.hpp"
#include "katpd/assumptions.hpp"
#include "katpd/headers.hpp"
#include "katpd/problem_file.hpp"
#include "katpd/hoare.hpp"
#include "katpd/random.hpp"
#include "katpd/bench.hpp"
