#pragma once

// Umbrella header: the whole laboratory in one include.

#include "ejlab/campaigns.hpp"
#include "ejlab/dynamics.hpp"
#include "ejlab/errors.hpp"
#include "ejlab/expm.hpp"
#include "ejlab/interference.hpp"
#include "ejlab/lie.hpp"
#include "ejlab/linalg.hpp"
#include "ejlab/logic.hpp"
#include "ejlab/model.hpp"
#include "ejlab/model_io.hpp"
#include "ejlab/octonion.hpp"
#include "ejlab/reports.hpp"
#include "ejlab/rng.hpp"
#include "ejlab/sampling.hpp"
#include "ejlab/trace_state.hpp"
#include "ejlab/vn.hpp"
