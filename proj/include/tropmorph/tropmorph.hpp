#pragma once

#include "tropmorph/adjunction.hpp"
#include "tropmorph/asticity.hpp"
#include "tropmorph/builders.hpp"
#include "tropmorph/error.hpp"
#include "tropmorph/graph.hpp"
#include "tropmorph/io.hpp"
#include "tropmorph/iterated.hpp"
#include "tropmorph/lattice.hpp"
#include "tropmorph/matrix.hpp"
#include "tropmorph/random.hpp"
#include "tropmorph/scalar.hpp"
#include "tropmorph/spectral.hpp"
#include "tropmorph/verify.hpp"
