#pragma once

#include "whframe/rational.hpp"
#include "whframe/enclosure.hpp"
#include "whframe/poly.hpp"
#include "whframe/piecewise.hpp"
#include "whframe/extrema.hpp"
#include "whframe/gabor.hpp"
#include "whframe/amalgam.hpp"
#include "whframe/walnut.hpp"
#include "whframe/zak.hpp"
#include "whframe/perturb.hpp"
#include "whframe/oracle.hpp"
#include "whframe/windows.hpp"
#include "whframe/suite.hpp"
#include "whframe/io.hpp"
