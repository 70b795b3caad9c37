#pragma once

#include "povm/bloch.hpp"
#include "povm/discrimination.hpp"
#include "povm/document.hpp"
#include "povm/error.hpp"
#include "povm/hermitian.hpp"
#include "povm/sampler.hpp"
#include "povm/svg.hpp"
#include "povm/tolerance.hpp"
#include "povm/vec3.hpp"
