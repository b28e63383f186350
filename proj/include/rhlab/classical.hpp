#pragma once

#include "rhlab/classical/harmonic.hpp"
#include "rhlab/classical/koch.hpp"
#include "rhlab/classical/lagarias.hpp"
#include "rhlab/classical/li_integral.hpp"
#include "rhlab/classical/sieve.hpp"
