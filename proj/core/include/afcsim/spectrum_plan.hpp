#pragma once

#include <array>
#include <string>
#include <vector>

namespace afcsim::spectrum {

inline constexpr double kBandLowMhz = 5925.0;
inline constexpr double kBandHighMhz = 7125.0;
inline constexpr std::array<int, 5> kBandwidthsMhz{20, 40, 80, 160, 320};

// A US 6 GHz standard-power channel as the AP lists it.
//
// `number` is the channel number printed in the AP's channel report and
// carried on the wire. For 20 MHz it is the center-frequency index (CFI).
// For wider channels it is the lowest constituent 20 MHz channel, so the
// channel covers 20 MHz channels number, number + 4, ... and its CFI is
// number + 2 * (bandwidth / 20 - 1). `variant` distinguishes the two
// overlapping 320 MHz channelizations (1 or 2) and is 0 otherwise.
struct ChannelId {
  int bandwidth_mhz = 20;
  int number = 1;
  int variant = 0;

  friend bool operator==(const ChannelId&, const ChannelId&) = default;
  friend auto operator<=>(const ChannelId&, const ChannelId&) = default;
};

struct FrequencyRange {
  double low_mhz = 0.0;
  double high_mhz = 0.0;

  friend bool operator==(const FrequencyRange&, const FrequencyRange&) = default;
};

bool is_supported_bandwidth(int bandwidth_mhz);

// True iff the channel appears in the US standard-power table.
bool is_us_channel(const ChannelId& ch);

// 5925 <= low < high <= 7125
bool is_within_band(const FrequencyRange& r);

int center_index(const ChannelId& ch);
double center_frequency_mhz(const ChannelId& ch);
FrequencyRange channel_span(const ChannelId& ch);

// Ordered channel list for one bandwidth. 320 MHz returns both variants
// (variant 1 first). Throws UnsupportedBandwidth.
std::vector<ChannelId> us_standard_power_channels(int bandwidth_mhz);

// Single 320 MHz variant (1 or 2). Throws UnsupportedBandwidth for any other
// bandwidth/variant combination.
std::vector<ChannelId> us_standard_power_channels(int bandwidth_mhz, int variant);

// Open-interval overlap; ranges that only share an edge do not overlap.
bool overlaps(const FrequencyRange& a, const FrequencyRange& b);

// "20MHz ch 141", "320MHz_2 ch 33"
std::string to_string(const ChannelId& ch);

}  // namespace afcsim::spectrum
