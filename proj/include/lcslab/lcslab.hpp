#pragma once

#include "lcslab/almost_law.hpp"
#include "lcslab/alpha.hpp"
#include "lcslab/checkpoint.hpp"
#include "lcslab/constants.hpp"
#include "lcslab/construction.hpp"
#include "lcslab/group_ring.hpp"
#include "lcslab/magnus.hpp"
#include "lcslab/nc_series.hpp"
#include "lcslab/nielsen.hpp"
#include "lcslab/oracle.hpp"
#include "lcslab/quotient.hpp"
#include "lcslab/search.hpp"
#include "lcslab/subgroup.hpp"
#include "lcslab/verify.hpp"
#include "lcslab/word.hpp"
