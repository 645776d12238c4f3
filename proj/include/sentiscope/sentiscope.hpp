#pragma once

// Umbrella header.
#include "sentiscope/calendar.hpp"
#include "sentiscope/csv.hpp"
#include "sentiscope/engine.hpp"
#include "sentiscope/error.hpp"
#include "sentiscope/eval.hpp"
#include "sentiscope/io.hpp"
#include "sentiscope/pipeline.hpp"
#include "sentiscope/scores.hpp"
#include "sentiscope/stats.hpp"
#include "sentiscope/svg.hpp"
#include "sentiscope/synthetic.hpp"
#include "sentiscope/timeseries.hpp"
#include "sentiscope/tokenizer.hpp"
#include "sentiscope/vocabulary.hpp"
