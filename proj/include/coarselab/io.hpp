#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "coarselab/boundary.hpp"
#include "coarselab/dynamics.hpp"
#include "coarselab/hyperbolicity.hpp"

namespace coarselab {

using Json = nlohmann::ordered_json;

/// Rounds to 12 significant digits; non-finite values become null.
Json number(double v);

Json to_json(const Point& p);
Json to_json(const DeltaReport& r);
Json to_json(const HorofunctionSample& h);
Json to_json(const CompactificationReport& r);
Json to_json(const AsymptoticityProfile& p);
Json to_json(const IsometryCheck& c);
Json to_json(const DivergenceEstimate& e, bool with_table = true);
Json to_json(const DisplacementEstimate& e);
Json to_json(const ClassificationReport& c);
Json to_json(const DenjoyWolffEstimate& e);
Json to_json(const DilationEstimate& e);
Json to_json(const AxisResult& a);
Json to_json(const PowerTable& t);
Json to_json(const DynamicsReport& r);

/// Two coordinates per point: (x, y), (axial, angle), or (node, 0) on graphs;
/// grid nodes are written as their lattice position.
std::pair<double, double> coordinates(const Space& space, const Point& p);

void write_path_csv(const std::filesystem::path& file, const GeodesicPath& path);
/// Reads rows `t,c1,c2`; grid coordinates are snapped to lattice nodes.
GeodesicPath read_path_csv(const std::filesystem::path& file, const Space& space);
void write_profile_csv(const std::filesystem::path& file, const AsymptoticityProfile& profile);
void write_horofunction_csv(const std::filesystem::path& file, const Space& space, const HorofunctionSample& h);
void write_rate_csv(const std::filesystem::path& file, const DivergenceEstimate& e);
void write_power_csv(const std::filesystem::path& file, const PowerTable& t);
void write_witness_csv(const std::filesystem::path& file, const Space& space, const DeltaReport& r);
void write_text(const std::filesystem::path& file, const std::string& text);

}  // namespace coarselab
