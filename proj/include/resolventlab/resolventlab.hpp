#pragma once

#include "resolventlab/chains.hpp"
#include "resolventlab/domains.hpp"
#include "resolventlab/errors.hpp"
#include "resolventlab/freeprob.hpp"
#include "resolventlab/generators.hpp"
#include "resolventlab/measure.hpp"
#include "resolventlab/parallel.hpp"
#include "resolventlab/resolvents.hpp"
#include "resolventlab/semigroups.hpp"
