#include "afcsim/spectrum_plan.hpp"

#include <algorithm>
#include <span>

#include "afcsim/errors.hpp"

namespace afcsim::spectrum {
namespace {

// US standard-power channel numbers as the AP reports them. 20 MHz channels
// 97-113 are absent from the authorized set.
constexpr int k20[] = {1,   5,   9,   13,  17,  21,  25,  29,  33,  37,  41,  45,  49,
                       53,  57,  61,  65,  69,  73,  77,  81,  85,  89,  93,  117, 121,
                       125, 129, 133, 137, 141, 145, 149, 153, 157, 161, 165, 169, 173,
                       177, 181};
constexpr int k40[] = {1, 9, 17, 25, 33, 41, 49, 57, 65, 73, 81, 89, 121, 129, 137, 145, 153, 161,
                       169, 177};
constexpr int k80[] = {1, 17, 33, 49, 65, 81, 129, 145, 161};
constexpr int k160[] = {1, 33, 65, 129};
constexpr int k320v1[] = {1};
constexpr int k320v2[] = {33};

std::span<const int> table_for(int bandwidth_mhz, int variant) {
  switch (bandwidth_mhz) {
    case 20: return k20;
    case 40: return k40;
    case 80: return k80;
    case 160: return k160;
    case 320: return variant == 1 ? std::span<const int>(k320v1) : std::span<const int>(k320v2);
    default: throw UnsupportedBandwidth(bandwidth_mhz);
  }
}

void append(std::vector<ChannelId>& out, int bandwidth_mhz, int variant) {
  for (int n : table_for(bandwidth_mhz, variant)) out.push_back(ChannelId{bandwidth_mhz, n, variant});
}

}  // namespace

bool is_supported_bandwidth(int bandwidth_mhz) {
  return std::find(kBandwidthsMhz.begin(), kBandwidthsMhz.end(), bandwidth_mhz) !=
         kBandwidthsMhz.end();
}

bool is_us_channel(const ChannelId& ch) {
  if (!is_supported_bandwidth(ch.bandwidth_mhz)) return false;
  if ((ch.bandwidth_mhz == 320) != (ch.variant == 1 || ch.variant == 2)) return false;
  if (ch.bandwidth_mhz != 320 && ch.variant != 0) return false;
  const auto t = table_for(ch.bandwidth_mhz, ch.variant);
  return std::find(t.begin(), t.end(), ch.number) != t.end();
}

bool is_within_band(const FrequencyRange& r) {
  return r.low_mhz >= kBandLowMhz && r.low_mhz < r.high_mhz && r.high_mhz <= kBandHighMhz;
}

int center_index(const ChannelId& ch) {
  const int subchannels = ch.bandwidth_mhz / 20;
  return ch.number + 2 * (subchannels - 1);
}

double center_frequency_mhz(const ChannelId& ch) {
  return 5950.0 + 5.0 * center_index(ch);
}

FrequencyRange channel_span(const ChannelId& ch) {
  const double c = center_frequency_mhz(ch);
  const double half = ch.bandwidth_mhz / 2.0;
  return {c - half, c + half};
}

std::vector<ChannelId> us_standard_power_channels(int bandwidth_mhz) {
  std::vector<ChannelId> out;
  if (bandwidth_mhz == 320) {
    append(out, 320, 1);
    append(out, 320, 2);
  } else {
    append(out, bandwidth_mhz, 0);
  }
  return out;
}

std::vector<ChannelId> us_standard_power_channels(int bandwidth_mhz, int variant) {
  if (bandwidth_mhz != 320 || (variant != 1 && variant != 2)) {
    throw UnsupportedBandwidth(bandwidth_mhz);
  }
  std::vector<ChannelId> out;
  append(out, 320, variant);
  return out;
}

bool overlaps(const FrequencyRange& a, const FrequencyRange& b) {
  return a.low_mhz < b.high_mhz && b.low_mhz < a.high_mhz;
}

std::string to_string(const ChannelId& ch) {
  std::string s = std::to_string(ch.bandwidth_mhz) + "MHz";
  if (ch.variant != 0) s += "_" + std::to_string(ch.variant);
  return s + " ch " + std::to_string(ch.number);
}

}  // namespace afcsim::spectrum
