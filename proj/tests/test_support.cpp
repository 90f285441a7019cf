//
// biocorpus - Copyright 2026 The biocorpus Authors
// SPDX-License-Identifier: Apache-2.0
//

#include "test_support.hpp"

#include <filesystem>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <sys/wait.h>
#include <unistd.h>

namespace biocorpus::testdata {

std::string data_path(const std::string &name) { return std::string(BIOCORPUS_DATA_DIR) + "/" + name; }

std::vector<std::string> read_lines(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (!line.empty())
      out.push_back(line);
  }
  return out;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string make_temp_dir(const std::string &tag) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path()
                 / ("biocorpus-" + tag + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

namespace {

std::string quoted(const std::string &s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  return out + "'";
}

}  // namespace

CommandResult run_cli(const std::vector<std::string> &args, const std::vector<std::string> &env,
                      const std::string &input) {
  static int counter = 0;
  std::string dir = make_temp_dir("cli-run") + "/";
  std::string base = dir + std::to_string(counter++);
  {
    std::ofstream in(base + ".in", std::ios::binary);
    in << input;
  }
  std::string cmd;
  for (const std::string &e : env)
    cmd += quoted(e) + " ";
  cmd += quoted(BIOCORPUS_CLI);
  for (const std::string &a : args)
    cmd += " " + quoted(a);
  cmd += " <" + quoted(base + ".in") + " >" + quoted(base + ".out") + " 2>" + quoted(base + ".err");
  if (!env.empty())
    cmd = "env " + cmd;
  int raw = std::system(cmd.c_str());
  CommandResult r;
  r.status = raw != -1 && WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = read_file(base + ".out");
  r.err = read_file(base + ".err");
  std::filesystem::remove_all(dir);
  return r;
}

}  // namespace biocorpus::testdata
