#pragma once

#include "adaphase/analytics.hpp"
#include "adaphase/angles.hpp"
#include "adaphase/controller.hpp"
#include "adaphase/ensemble.hpp"
#include "adaphase/errors.hpp"
#include "adaphase/fitting.hpp"
#include "adaphase/fourier_pdf.hpp"
#include "adaphase/io.hpp"
#include "adaphase/narrowing.hpp"
#include "adaphase/readout.hpp"
#include "adaphase/rng.hpp"
#include "adaphase/schedule.hpp"
#include "adaphase/spin_bath.hpp"
#include "adaphase/sweep.hpp"
