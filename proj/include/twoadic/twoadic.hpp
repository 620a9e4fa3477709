#pragma once

#include "twoadic/bigint.hpp"
#include "twoadic/bit_sequence.hpp"
#include "twoadic/budget.hpp"
#include "twoadic/counting.hpp"
#include "twoadic/envelopes.hpp"
#include "twoadic/errors.hpp"
#include "twoadic/experiments.hpp"
#include "twoadic/fcsr.hpp"
#include "twoadic/io.hpp"
#include "twoadic/profile.hpp"
#include "twoadic/random.hpp"
#include "twoadic/rational_rep.hpp"
