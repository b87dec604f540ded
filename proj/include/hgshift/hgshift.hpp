#pragma once

// Umbrella header for the hypergraph shift library.

#include "hgshift/adjacency.hpp"
#include "hgshift/clustering.hpp"
#include "hgshift/common.hpp"
#include "hgshift/hypergraph.hpp"
#include "hgshift/io.hpp"
#include "hgshift/kkt_oracle.hpp"
#include "hgshift/matching.hpp"
#include "hgshift/replicator.hpp"
#include "hgshift/shift.hpp"
#include "hgshift/simplex.hpp"
#include "hgshift/stqp.hpp"
#include "hgshift/voting.hpp"
