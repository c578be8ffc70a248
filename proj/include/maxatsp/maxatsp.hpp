#pragma once

#include "maxatsp/alternating.hpp"
#include "maxatsp/coloring.hpp"
#include "maxatsp/cycle_cover.hpp"
#include "maxatsp/gadget.hpp"
#include "maxatsp/instance.hpp"
#include "maxatsp/matching.hpp"
#include "maxatsp/multigraph.hpp"
#include "maxatsp/oracle.hpp"
#include "maxatsp/relaxed_cover.hpp"
#include "maxatsp/superstring.hpp"
#include "maxatsp/tour_assembly.hpp"
