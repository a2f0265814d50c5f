#include "eegspect/edf.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "eegspect/util.hpp"

namespace eegspect::edf {

namespace {

class ByteReader {
 public:
  explicit ByteReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::string ascii(std::size_t len, const char* field) {
    if (pos_ + len > bytes_.size()) {
      throw std::runtime_error(std::string("truncated EDF header at field ") +
                               field);
    }
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), len);
    pos_ += len;
    return s;
  }

  void require_data(std::size_t len, const char* what) const {
    if (pos_ + len > bytes_.size()) {
      throw std::runtime_error(std::string("truncated EDF file: ") + what);
    }
  }

  std::int16_t sample() {
    const std::int16_t v = static_cast<std::int16_t>(
        static_cast<std::uint16_t>(bytes_[pos_]) |
        (static_cast<std::uint16_t>(bytes_[pos_ + 1]) << 8));
    pos_ += 2;
    return v;
  }

  std::size_t pos() const { return pos_; }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

long long parse_int_field(const std::string& raw, const char* field) {
  const std::string s = trim(raw);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::runtime_error(std::string("EDF header field ") + field +
                             " is not an integer: '" + s + "'");
  }
  return value;
}

double parse_real_field(const std::string& raw, const char* field) {
  const std::string s = trim(raw);
  if (s.empty()) {
    throw std::runtime_error(std::string("EDF header field ") + field +
                             " is empty");
  }
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &consumed);
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("EDF header field ") + field +
                             " is not a number: '" + s + "'");
  }
  if (consumed != s.size()) {
    throw std::runtime_error(std::string("EDF header field ") + field +
                             " has trailing characters: '" + s + "'");
  }
  return value;
}

}  // namespace

double digital_to_physical(int digital, const EdfSignalHeader& sig) {
  const double scale = (sig.physical_max - sig.physical_min) /
                       (static_cast<double>(sig.digital_max) - sig.digital_min);
  return sig.physical_min + (static_cast<double>(digital) - sig.digital_min) * scale;
}

ParsedEdf parse_edf(const std::vector<std::uint8_t>& bytes) {
  ByteReader reader(bytes);
  EdfHeader header;
  header.version = trim(reader.ascii(8, "version"));
  reader.ascii(80, "patient");
  reader.ascii(80, "recording");
  reader.ascii(8, "start date");
  reader.ascii(8, "start time");
  reader.ascii(8, "header bytes");
  reader.ascii(44, "reserved");
  header.record_count = parse_int_field(reader.ascii(8, "record count"),
                                        "record count");
  header.record_duration_s = parse_real_field(
      reader.ascii(8, "record duration"), "record duration");
  const long long ns = parse_int_field(reader.ascii(4, "signal count"),
                                       "signal count");
  if (header.record_count < 1) {
    throw std::runtime_error("EDF record count must be at least 1");
  }
  if (header.record_duration_s <= 0) {
    throw std::runtime_error("EDF record duration must be positive");
  }
  if (ns < 1) {
    throw std::runtime_error("EDF signal count must be at least 1");
  }

  const auto nsz = static_cast<std::size_t>(ns);
  header.signals.resize(nsz);
  for (auto& sig : header.signals) sig.label = trim(reader.ascii(16, "label"));
  for (std::size_t i = 0; i < nsz; ++i) reader.ascii(80, "transducer");
  for (std::size_t i = 0; i < nsz; ++i) reader.ascii(8, "physical dimension");
  for (auto& sig : header.signals) {
    sig.physical_min = parse_real_field(reader.ascii(8, "physical min"),
                                        "physical min");
  }
  for (auto& sig : header.signals) {
    sig.physical_max = parse_real_field(reader.ascii(8, "physical max"),
                                        "physical max");
  }
  for (auto& sig : header.signals) {
    sig.digital_min = static_cast<int>(
        parse_int_field(reader.ascii(8, "digital min"), "digital min"));
  }
  for (auto& sig : header.signals) {
    sig.digital_max = static_cast<int>(
        parse_int_field(reader.ascii(8, "digital max"), "digital max"));
  }
  for (std::size_t i = 0; i < nsz; ++i) reader.ascii(80, "prefiltering");
  for (auto& sig : header.signals) {
    const long long spr = parse_int_field(
        reader.ascii(8, "samples per record"), "samples per record");
    if (spr < 1) {
      throw std::runtime_error("EDF samples per record must be at least 1");
    }
    sig.samples_per_record = static_cast<std::size_t>(spr);
  }
  for (std::size_t i = 0; i < nsz; ++i) reader.ascii(32, "signal reserved");

  for (const auto& sig : header.signals) {
    if (sig.digital_max <= sig.digital_min) {
      throw std::runtime_error("EDF signal '" + sig.label +
                               "' has an empty digital range");
    }
  }
  const std::size_t spr0 = header.signals.front().samples_per_record;
  for (const auto& sig : header.signals) {
    if (sig.samples_per_record != spr0) {
      throw std::runtime_error(
          "EDF signals with differing sampling rates are not supported");
    }
  }

  ParsedEdf out;
  out.header = header;
  out.recording.fs =
      static_cast<double>(spr0) / header.record_duration_s;

  const std::size_t total =
      static_cast<std::size_t>(header.record_count) * spr0;
  out.recording.channels.reserve(header.signals.size());
  out.recording.samples.assign(header.signals.size(),
                               std::vector<double>(total));
  for (const auto& sig : header.signals) {
    out.recording.channels.push_back(sig.label);
  }

  std::size_t record_bytes = 0;
  for (const auto& sig : header.signals) {
    record_bytes += 2 * sig.samples_per_record;
  }
  reader.require_data(record_bytes * static_cast<std::size_t>(header.record_count),
                      "data records");
  for (long long rec = 0; rec < header.record_count; ++rec) {
    const std::size_t base = static_cast<std::size_t>(rec) * spr0;
    for (std::size_t ch = 0; ch < header.signals.size(); ++ch) {
      const auto& sig = header.signals[ch];
      auto& dst = out.recording.samples[ch];
      for (std::size_t i = 0; i < spr0; ++i) {
        dst[base + i] = digital_to_physical(reader.sample(), sig);
      }
    }
  }
  return out;
}

ParsedEdf parse_edf_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open EDF file: " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return parse_edf(bytes);
}

std::map<std::string, std::vector<SeizureAnnotation>> parse_summary(
    const std::string& text) {
  std::map<std::string, std::vector<SeizureAnnotation>> out;
  std::istringstream lines(text);
  std::string line;

  std::string current_file;
  long long declared = -1;
  std::vector<long long> starts, ends;

  auto finish_block = [&]() {
    if (current_file.empty()) return;
    if (declared < 0) {
      throw std::runtime_error("summary block for " + current_file +
                               " lacks a seizure count");
    }
    if (starts.size() != ends.size()) {
      throw std::runtime_error("summary block for " + current_file +
                               " has unpaired seizure times");
    }
    if (static_cast<long long>(starts.size()) != declared) {
      throw std::runtime_error(
          "summary block for " + current_file + " declares " +
          std::to_string(declared) + " seizures but lists " +
          std::to_string(starts.size()));
    }
    std::vector<SeizureAnnotation> annotations;
    for (std::size_t i = 0; i < starts.size(); ++i) {
      if (ends[i] <= starts[i]) {
        throw std::runtime_error("summary block for " + current_file +
                                 " has a seizure ending before it starts");
      }
      if (starts[i] < 0) {
        throw std::runtime_error("summary block for " + current_file +
                                 " has a negative seizure start");
      }
      annotations.push_back({starts[i], ends[i]});
    }
    if (out.count(current_file)) {
      throw std::runtime_error("duplicate summary block for " + current_file);
    }
    out[current_file] = std::move(annotations);
    current_file.clear();
    declared = -1;
    starts.clear();
    ends.clear();
  };

  // "Seizure 2 Start Time: 3782 seconds" -> 3782; the index is optional
  // (early recordings omit it).
  auto seizure_seconds = [](const std::string& rest,
                            const std::string& context) {
    std::istringstream ss(rest);
    long long value = 0;
    if (!(ss >> value)) {
      throw std::runtime_error("malformed seizure time in summary: " + context);
    }
    return value;
  };

  while (std::getline(lines, line)) {
    const std::string t = trim(line);
    if (t.rfind("File Name:", 0) == 0) {
      finish_block();
      current_file = trim(t.substr(10));
      if (current_file.empty()) {
        throw std::runtime_error("summary has an empty file name");
      }
    } else if (t.rfind("Number of Seizures in File:", 0) == 0) {
      const std::string rest = trim(t.substr(27));
      try {
        declared = std::stoll(rest);
      } catch (const std::exception&) {
        throw std::runtime_error("malformed seizure count: '" + rest + "'");
      }
      if (declared < 0) {
        throw std::runtime_error("negative seizure count in summary");
      }
    } else if (t.rfind("Seizure", 0) == 0) {
      const auto colon = t.find(':');
      if (colon == std::string::npos) continue;
      const std::string head = t.substr(0, colon);
      const std::string rest = trim(t.substr(colon + 1));
      if (head.find("Start Time") != std::string::npos) {
        starts.push_back(seizure_seconds(rest, t));
      } else if (head.find("End Time") != std::string::npos) {
        ends.push_back(seizure_seconds(rest, t));
      }
    }
  }
  finish_block();
  return out;
}

const std::vector<std::string>& canonical_channels() {
  static const std::vector<std::string> channels = {
      "FP1-F7", "FP1-F3", "FP2-F8", "FP2-F4", "FZ-CZ", "F3-C3",
      "F4-C4",  "F7-T7",  "F8-T8",  "C3-P3",  "C4-P4", "CZ-PZ",
      "T8-P8",  "T7-P7",  "P7-O1",  "P3-O1",  "P8-O2", "P4-O2"};
  return channels;
}

Recording select_channels(const Recording& recording,
                          const std::vector<std::string>& wanted) {
  Recording out;
  out.fs = recording.fs;
  out.annotations = recording.annotations;
  out.source_id = recording.source_id;
  out.channels.reserve(wanted.size());
  out.samples.reserve(wanted.size());
  for (const auto& name : wanted) {
    const std::string key = to_upper(trim(name));
    std::size_t found = recording.channels.size();
    for (std::size_t i = 0; i < recording.channels.size(); ++i) {
      if (to_upper(trim(recording.channels[i])) == key) {
        found = i;
        break;
      }
    }
    if (found == recording.channels.size()) {
      throw std::runtime_error("channel missing from recording: " + name);
    }
    out.channels.push_back(name);
    out.samples.push_back(recording.samples[found]);
  }
  return out;
}

}  // namespace eegspect::edf
