#pragma once

// Causal discovery for max-linear Bayesian networks: tropical critical-path
// machinery, d/*/C*-separation oracles, weighted transitive reduction and the
// PCstar pipeline.

#include "mlbn/cycles.hpp"
#include "mlbn/dag.hpp"
#include "mlbn/discovery.hpp"
#include "mlbn/errors.hpp"
#include "mlbn/io.hpp"
#include "mlbn/node_set.hpp"
#include "mlbn/oracle.hpp"
#include "mlbn/pdag.hpp"
#include "mlbn/random_models.hpp"
#include "mlbn/separation.hpp"
#include "mlbn/transitive_reduction.hpp"
#include "mlbn/tropical.hpp"
#include "mlbn/weighted_dag.hpp"
