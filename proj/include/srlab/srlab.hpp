#pragma once

#include "srlab/bandit.hpp"
#include "srlab/bounds.hpp"
#include "srlab/config.hpp"
#include "srlab/csv.hpp"
#include "srlab/errors.hpp"
#include "srlab/experiment.hpp"
#include "srlab/metrics.hpp"
#include "srlab/policies.hpp"
#include "srlab/rng.hpp"
#include "srlab/special.hpp"
#include "srlab/svg.hpp"
#include "srlab/verify.hpp"
#include "srlab/version.hpp"
