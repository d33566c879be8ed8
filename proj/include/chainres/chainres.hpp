#pragma once

#include "chainres/backends/lie2.hpp"
#include "chainres/backends/mod.hpp"
#include "chainres/calculus/difference.hpp"
#include "chainres/calculus/laws.hpp"
#include "chainres/chains/complex.hpp"
#include "chainres/core/category.hpp"
#include "chainres/derived/derived.hpp"
#include "chainres/derived/functor.hpp"
#include "chainres/homotopy/homotopy.hpp"
#include "chainres/resolutions/horseshoe.hpp"
#include "chainres/resolutions/resolution.hpp"
#include "chainres/simplicial/mod_generators.hpp"
#include "chainres/simplicial/simplicial.hpp"
