#pragma once

#include <cstdint>
#include <vector>

namespace edgefed {

using NodeId = std::int32_t;

/// One compute site: an edge device in the federation, or the cloud.
struct NodeSpec {
    NodeId id = 0;
    double mips = 0.0;  ///< million instructions per second, per core
    int cores = 1;
};

struct CloudSpec {
    double mips = 40000.0;
    int cores = 8;
};

/// Link parameters. Edge-to-edge traffic uses the WLAN; edge-to-cloud goes
/// over the satellite link and pays its propagation delay.
struct NetworkModel {
    double wlan_bandwidth_bps = 200e6;
    double wlan_jitter_stddev_s = 0.0;
    double sat_bandwidth_bps = 20e6;
    double sat_propagation_s = 0.57;
    double sat_jitter_stddev_s = 0.0;
    double min_transfer_s = 0.001;
};

/// Deterministic part of a transfer: propagation plus serialization.
double transfer_base_time(const NetworkModel& net, double size_kb, bool satellite);

}  // namespace edgefed
