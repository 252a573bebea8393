#include "senso/gesture.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "senso/errors.hpp"

namespace senso {

namespace {

double round6(double v) { return std::round(v * 1e6) / 1e6; }

std::string format_seconds(SimTime t) {
  const std::int64_t us = t.us();
  const std::int64_t mag = us < 0 ? -us : us;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%" PRId64 ".%06" PRId64, us < 0 ? "-" : "", mag / 1000000,
                mag % 1000000);
  return buf;
}

// Strict decimal parse; rejects trailing garbage.
bool parse_double(const std::string& tok, double& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  out = std::strtod(tok.c_str(), &end);
  return end == tok.c_str() + tok.size() && std::isfinite(out);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

double planar_distance(const Vec3& a, const Vec3& b) { return std::hypot(a.x - b.x, a.y - b.y); }

InputFrame normalized(const InputFrame& f) {
  InputFrame out = f;
  out.pos.x = round6(std::clamp(f.pos.x, -1.0, 1.0));
  out.pos.y = round6(std::clamp(f.pos.y, -1.0, 1.0));
  out.pos.z = round6(std::clamp(f.pos.z, -1.0, 1.0));
  out.grab = round6(std::clamp(f.grab, 0.0, 1.0));
  return out;
}

std::string_view to_string(GestureKind k) {
  switch (k) {
    case GestureKind::GraspStart: return "GraspStart";
    case GestureKind::Move: return "Move";
    case GestureKind::Release: return "Release";
    case GestureKind::HandLost: return "HandLost";
  }
  return "Move";
}

std::optional<GestureKind> parse_gesture_kind(std::string_view s) {
  for (auto k : {GestureKind::GraspStart, GestureKind::Move, GestureKind::Release, GestureKind::HandLost})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

void GestureRecognizer::push(const InputFrame& frame, std::vector<GestureEvent>& out) {
  const std::size_t index = index_++;
  if (last_t_ && frame.t < *last_t_) throw StreamError("timestamp went backwards", index);
  last_t_ = frame.t;

  if (!frame.hand_present) {
    if (grasping_) {
      out.push_back({frame.t, GestureKind::HandLost, last_pos_});
      grasping_ = false;
    }
    return;
  }

  const Vec3 pos = frame.pos;
  last_pos_ = pos;
  if (!grasping_) {
    if (frame.grab >= cfg_.grasp_threshold) {
      grasping_ = true;
      last_move_pos_ = pos;
      out.push_back({frame.t, GestureKind::GraspStart, pos});
    }
    return;
  }
  if (frame.grab <= cfg_.release_threshold) {
    grasping_ = false;
    out.push_back({frame.t, GestureKind::Release, pos});
    return;
  }
  // Recording values sit on a 1e-6 grid; the slack keeps an exact 0.01 step
  // from being lost to binary rounding.
  const double limit = cfg_.move_deadband - 1e-9;
  if (std::abs(pos.x - last_move_pos_.x) >= limit || std::abs(pos.y - last_move_pos_.y) >= limit ||
      std::abs(pos.z - last_move_pos_.z) >= limit) {
    last_move_pos_ = pos;
    out.push_back({frame.t, GestureKind::Move, pos});
  }
}

std::vector<GestureEvent> GestureRecognizer::push(const InputFrame& frame) {
  std::vector<GestureEvent> out;
  push(frame, out);
  return out;
}

std::vector<GestureEvent> recognize(std::span<const InputFrame> frames, RecognizerConfig cfg) {
  GestureRecognizer rec(cfg);
  std::vector<GestureEvent> out;
  for (const auto& f : frames) rec.push(f, out);
  return out;
}

std::string format_frame(const InputFrame& f) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s %.6f %.6f %.6f %.6f %d", format_seconds(f.t).c_str(), f.pos.x,
                f.pos.y, f.pos.z, f.grab, f.hand_present ? 1 : 0);
  return buf;
}

void write_recording(std::ostream& os, const InputScript& script) {
  if (!script.label.empty()) os << "# label: " << script.label << '\n';
  if (script.seed) os << "# seed: " << *script.seed << '\n';
  for (const auto& f : script.frames) os << format_frame(f) << '\n';
}

InputScript read_recording(std::istream& is) {
  InputScript script;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string body = trim(line);
    if (body.empty()) continue;
    if (body[0] == '#') {
      const auto colon = body.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = trim(body.substr(1, colon - 1));
      const std::string value = trim(body.substr(colon + 1));
      if (key == "label") {
        script.label = value;
      } else if (key == "seed") {
        try {
          std::size_t used = 0;
          script.seed = std::stoull(value, &used);
          if (used != value.size()) throw std::invalid_argument("seed");
        } catch (const std::exception&) {
          throw ParseError("bad seed '" + value + "'", lineno);
        }
      }
      continue;
    }
    std::istringstream ss(body);
    std::vector<std::string> tok;
    for (std::string w; ss >> w;) tok.push_back(w);
    if (tok.size() != 6) throw ParseError("expected 6 fields, got " + std::to_string(tok.size()), lineno);
    double v[5];
    for (int i = 0; i < 5; ++i)
      if (!parse_double(tok[static_cast<std::size_t>(i)], v[i]))
        throw ParseError("bad number '" + tok[static_cast<std::size_t>(i)] + "'", lineno);
    if (tok[5] != "0" && tok[5] != "1") throw ParseError("hand_present must be 0 or 1", lineno);
    InputFrame f;
    f.t = SimTime::seconds(v[0]);
    f.pos = {v[1], v[2], v[3]};
    f.grab = v[4];
    f.hand_present = tok[5] == "1";
    if (!script.frames.empty() && f.t < script.frames.back().t)
      throw ParseError("timestamp went backwards", lineno);
    script.frames.push_back(f);
  }
  return script;
}

void save_recording(const std::string& path, const InputScript& script) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path);
  write_recording(os, script);
}

InputScript load_recording(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot read " + path);
  return read_recording(is);
}

}  // namespace senso
