#pragma once

#include "pdgeom/assignment.hpp"
#include "pdgeom/bipartite_matching.hpp"
#include "pdgeom/diagram.hpp"
#include "pdgeom/distance.hpp"
#include "pdgeom/embedding.hpp"
#include "pdgeom/error.hpp"
#include "pdgeom/homology.hpp"
#include "pdgeom/metric_space.hpp"
#include "pdgeom/negtype.hpp"
#include "pdgeom/oracle.hpp"
#include "pdgeom/random.hpp"
#include "pdgeom/report.hpp"
#include "pdgeom/text.hpp"
