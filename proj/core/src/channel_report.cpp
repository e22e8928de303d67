#include <cstdio>
#include <string>
#include <vector>

#include "afcsim/ap_client.hpp"

namespace afcsim::ap {
namespace {

// Label column widths observed on the AP console: the granted layout is
// narrower than the no-channel layout.
constexpr std::size_t kGrantedLabelWidth = 23;
constexpr std::size_t kEmptyLabelWidth = 26;
constexpr std::size_t kLineWidth = 60;
constexpr std::size_t kEirpColumns = 21;

struct PhyRow {
  const char* label;
  int bandwidth_mhz;
  int variant;
};

constexpr PhyRow kPhyRows[] = {
    {"6GHz", 20, 0},          {"6GHz 40MHz", 40, 0},     {"6GHz 80MHz", 80, 0},
    {"6GHz 160MHz", 160, 0},  {"6GHz 80+80MHz", -1, 0},  {"6GHz 320MHz_1", 320, 1},
    {"6GHz 320MHz_2", 320, 2},
};

constexpr PhyRow kEirpRows[] = {
    {"20MHz channel", 20, 0},   {"40MHz channel", 40, 0},       {"80MHz channel", 80, 0},
    {"160MHz channel", 160, 0}, {"320MHz_1 channel", 320, 1}, {"320MHz_2 channel", 320, 2},
};

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::vector<const afc::ChannelGrant*> grants_for(const ApState& state, int bw, int variant) {
  std::vector<const afc::ChannelGrant*> out;
  if (!state.grants) return out;
  for (const auto& g : state.grants->table) {
    if (g.channel.bandwidth_mhz == bw && g.channel.variant == variant) out.push_back(&g);
  }
  return out;
}

// Greedy wrap; continuation lines keep their trailing separator.
void append_channel_list(std::string& out, const std::vector<const afc::ChannelGrant*>& grants,
                         std::size_t label_width) {
  if (grants.empty()) {
    out += "None\n";
    return;
  }
  const std::size_t limit = kLineWidth - label_width;
  std::string line;
  for (const auto* g : grants) {
    const std::string token = std::to_string(g->channel.number) + " ";
    if (!line.empty() && line.size() + token.size() > limit) {
      out += line + "\n" + std::string(label_width, ' ');
      line.clear();
    }
    line += token;
  }
  line.pop_back();
  out += line + "\n";
}

void append_eirp_block(std::string& out, const ApState& state) {
  out += "Max EIRP of AFC channel  \n";
  char cell[16];
  for (const auto& row : kEirpRows) {
    const auto grants = grants_for(state, row.bandwidth_mhz, row.variant);
    for (std::size_t start = 0; start < grants.size(); start += kEirpColumns) {
      const std::size_t end = std::min(grants.size(), start + kEirpColumns);
      std::string numbers = pad(row.label, 16);
      std::string powers = pad("Max Eirp", 17);
      for (std::size_t i = start; i < end; ++i) {
        std::snprintf(cell, sizeof cell, "%5d", grants[i]->channel.number);
        numbers += cell;
        std::snprintf(cell, sizeof cell, "%5.1f", grants[i]->max_eirp_dbm);
        powers += cell;
      }
      out += numbers + "\n" + powers + "\n";
    }
  }
}

}  // namespace

std::string render_channel_report(const ApState& state, UtcSeconds now) {
  const bool has_channels = state.grants && !state.grants->table.empty();
  const std::size_t w = has_channels ? kGrantedLabelWidth : kEmptyLabelWidth;

  std::string out;
  out += "Received afc channels \n";
  out += "----------------------\n";
  out += pad("PHY Type", w) + "Allowed Channels\n";
  out += pad("--------", w) + "----------------\n";
  for (const auto& row : kPhyRows) {
    out += pad(row.label, w);
    if (row.bandwidth_mhz < 0) {
      out += "None\n";  // 80+80 MHz is never granted
    } else {
      append_channel_list(out, grants_for(state, row.bandwidth_mhz, row.variant), w);
    }
  }
  out += pad("Present time", w) + format_console_time(now) + "\n";
  out += pad("Expiry time", w) +
         (state.grants ? format_console_time(state.grants->expire_time) : std::string("None")) +
         "\n";
  out += pad("Country code", w) +
         (state.grants && state.grants->country_code ? *state.grants->country_code
                                                     : std::string("None")) +
         "\n";
  out += pad("AFC channel expired", w) + (state.phase == Phase::kAuthorized ? "No" : "Yes") + "\n";
  out += pad("AFC channel required", w) + "Yes\n";

  if (has_channels) {
    out += "\n";
    append_eirp_block(out, state);
  }
  return out;
}

}  // namespace afcsim::ap
