#pragma once

#include "fockoptics/bosonic_ops.hpp"
#include "fockoptics/errors.hpp"
#include "fockoptics/fock.hpp"
#include "fockoptics/interferometer.hpp"
#include "fockoptics/metrics.hpp"
#include "fockoptics/oracle.hpp"
#include "fockoptics/splitter.hpp"
