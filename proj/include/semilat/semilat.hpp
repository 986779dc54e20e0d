#pragma once

#include "semilat/constructions.hpp"
#include "semilat/corpus.hpp"
#include "semilat/errors.hpp"
#include "semilat/extensions.hpp"
#include "semilat/geometry.hpp"
#include "semilat/io.hpp"
#include "semilat/isomorphism.hpp"
#include "semilat/lattice.hpp"
#include "semilat/lowering.hpp"
#include "semilat/oracles.hpp"
#include "semilat/poset.hpp"
#include "semilat/predicates.hpp"
#include "semilat/subset.hpp"
