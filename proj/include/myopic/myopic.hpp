#pragma once

// Double-sided myopic algorithms for unconstrained submodular maximization:
// restricted value-oracle games, adversarial lower-bound certificates, and
// the LP pipeline that constructs them.

#include "myopic/adversary.hpp"
#include "myopic/certificate.hpp"
#include "myopic/conditions.hpp"
#include "myopic/cut_rank.hpp"
#include "myopic/dicut.hpp"
#include "myopic/digraph.hpp"
#include "myopic/game.hpp"
#include "myopic/gateway.hpp"
#include "myopic/generators.hpp"
#include "myopic/instance.hpp"
#include "myopic/lp.hpp"
#include "myopic/policy.hpp"
#include "myopic/rational.hpp"
#include "myopic/rng.hpp"
#include "myopic/runner.hpp"
#include "myopic/set_function.hpp"
#include "myopic/simplex.hpp"
#include "myopic/subset.hpp"
