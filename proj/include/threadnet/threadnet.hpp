#pragma once

// Umbrella header: conversation-thread ingestion, temporal multigraph
// reconstruction, incremental structural metrics, growth dynamics and
// corpus statistics.

#include <threadnet/config.hpp>
#include <threadnet/csv.hpp>
#include <threadnet/dynamics.hpp>
#include <threadnet/errors.hpp>
#include <threadnet/features.hpp>
#include <threadnet/generate.hpp>
#include <threadnet/graph.hpp>
#include <threadnet/io.hpp>
#include <threadnet/judgment.hpp>
#include <threadnet/manifest.hpp>
#include <threadnet/metrics.hpp>
#include <threadnet/parse.hpp>
#include <threadnet/record.hpp>
#include <threadnet/rng.hpp>
#include <threadnet/stats.hpp>
