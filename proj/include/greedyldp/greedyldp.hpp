#pragma once

#include "greedyldp/chain.hpp"
#include "greedyldp/csv.hpp"
#include "greedyldp/explorer.hpp"
#include "greedyldp/ext_real.hpp"
#include "greedyldp/fluid.hpp"
#include "greedyldp/lambert.hpp"
#include "greedyldp/ldp.hpp"
#include "greedyldp/model.hpp"
#include "greedyldp/quadrature.hpp"
#include "greedyldp/rng.hpp"
