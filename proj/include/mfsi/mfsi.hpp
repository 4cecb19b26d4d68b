#pragma once

#include "mfsi/budget.hpp"
#include "mfsi/component_type.hpp"
#include "mfsi/errors.hpp"
#include "mfsi/graph.hpp"
#include "mfsi/graph_io.hpp"
#include "mfsi/harness.hpp"
#include "mfsi/ilp.hpp"
#include "mfsi/matching.hpp"
#include "mfsi/neighborhood_diversity.hpp"
#include "mfsi/oracle.hpp"
#include "mfsi/p4free.hpp"
#include "mfsi/p4hitting.hpp"
#include "mfsi/paths.hpp"
#include "mfsi/polynomial.hpp"
#include "mfsi/recognizers.hpp"
#include "mfsi/reductions.hpp"
#include "mfsi/rng.hpp"
#include "mfsi/vertex_integrity.hpp"
