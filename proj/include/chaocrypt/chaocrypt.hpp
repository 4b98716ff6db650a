#pragma once

#include "chaos.hpp"
#include "cipher.hpp"
#include "errors.hpp"
#include "image.hpp"
#include "io.hpp"
#include "keygen.hpp"
#include "metrics.hpp"
#include "robustness.hpp"
