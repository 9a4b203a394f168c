#pragma once

#include "swivel/cmi_recovery.hpp"
#include "swivel/combos.hpp"
#include "swivel/commutant.hpp"
#include "swivel/entropy.hpp"
#include "swivel/error.hpp"
#include "swivel/instance_io.hpp"
#include "swivel/matlib.hpp"
#include "swivel/norm_chain.hpp"
#include "swivel/optimizer.hpp"
#include "swivel/qstate.hpp"
#include "swivel/random.hpp"
#include "swivel/swivel.hpp"
#include "swivel/version.hpp"
