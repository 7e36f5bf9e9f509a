#pragma once

#include "qwalk/cospectral.hpp"
#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/numtheory.hpp"
#include "qwalk/quotient.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/transfer.hpp"
