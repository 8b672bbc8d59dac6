// rainbow: build atom structures, check axioms, solve and verify games,
// check the red blow-up, play interactively and export DOT.
//
// Exit codes: 0 pass, 1 a checked claim failed, 2 budget exceeded, 3 bad input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rainbow/rainbow.hpp"

using namespace rainbow;

namespace {

enum Exit { kPass = 0, kClaimFailed = 1, kBudget = 2, kInput = 3 };

struct SpecArgs {
  std::string preset = "ca-n2-n1";
  int n = 3;
  std::string spec_file;
  int copies = 0;  // 0: as given
};

void add_spec_options(CLI::App* cmd, SpecArgs& a) {
  cmd->add_option("--preset", a.preset, "preset family (ca-n2-n1: greens n+2, reds n+1)");
  cmd->add_option("--n", a.n, "dimension for the preset");
  cmd->add_option("--spec", a.spec_file, "spec JSON file (overrides the preset)");
  cmd->add_option("--copies", a.copies, "red copies N");
}

RainbowSpec load_spec(const SpecArgs& a) {
  RainbowSpec spec;
  if (!a.spec_file.empty()) {
    std::ifstream in(a.spec_file);
    if (!in) throw InputError("cannot read " + a.spec_file);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw InputError(a.spec_file + ": " + e.what());
    }
    spec = spec_from_json(j.contains("spec") ? j.at("spec") : j);
  } else if (a.preset == "ca-n2-n1") {
    try {
      spec = preset_ca_n2_n1(a.n);
    } catch (const SpecError& e) {
      throw InputError(e.what());
    }
  } else {
    throw InputError("unknown preset '" + a.preset + "'");
  }
  if (a.copies > 0) spec = split_spec(spec, a.copies);
  return spec;
}

void write_json(const std::string& path, const json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct GameArgs {
  std::string game = "g";
  int rounds = 0;
};

// "g7" is G^7, "f9" is F^9 (nine nodes, reuse); --rounds overrides the round count.
GameConfig parse_game(const GameArgs& a) {
  GameConfig cfg;
  if (a.game.empty() || (a.game[0] != 'g' && a.game[0] != 'f')) throw InputError("game must be gK or fM");
  int num = 0;
  if (a.game.size() > 1) {
    try {
      num = std::stoi(a.game.substr(1));
    } catch (const std::exception&) {
      throw InputError("bad game '" + a.game + "'");
    }
  }
  if (a.game[0] == 'g') {
    cfg.rounds = a.rounds > 0 ? a.rounds : num;
  } else {
    if (num < 2) throw InputError("F^m needs m >= 2");
    cfg.node_budget = num;
    cfg.reuse = true;
    cfg.rounds = a.rounds;
  }
  if (cfg.rounds < 1) throw InputError("give a round count, as gK or --rounds K");
  return cfg;
}

double default_budget() {
  if (const char* e = std::getenv("RAINBOW_BUDGET")) return std::atof(e);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rainbow cylindric-algebra workbench"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "seed for sampled checks")->capture_default_str();

  SpecArgs spec_args;
  std::string report_path, out_path, cert_path;

  auto* build = app.add_subcommand("build", "enumerate the atom structure and summarise it");
  add_spec_options(build, spec_args);
  bool with_atoms = false;
  build->add_flag("--atoms", with_atoms, "include every atom in the output");
  build->add_option("--out", out_path, "output file (default stdout)");

  auto* axioms = app.add_subcommand("axioms", "check the cylindric-algebra axioms on the complex algebra");
  add_spec_options(axioms, spec_args);
  std::size_t samples = 1000;
  axioms->add_option("--samples", samples, "seeded element samples")->capture_default_str();
  axioms->add_option("--report", report_path, "report file (default stdout)");

  auto* solve_cmd = app.add_subcommand("solve", "solve an atomic game exhaustively");
  add_spec_options(solve_cmd, spec_args);
  GameArgs game_args;
  double budget = default_budget();
  bool no_canonical = false, do_replay = false;
  std::string expect;
  solve_cmd->add_option("--game", game_args.game, "gK (K rounds) or fM (M nodes, reuse)");
  solve_cmd->add_option("--rounds", game_args.rounds, "rounds, the opening included");
  solve_cmd->add_option("--budget", budget, "time budget in seconds (0: none; default $RAINBOW_BUDGET)");
  solve_cmd->add_option("--cert", cert_path, "write the certificate here");
  solve_cmd->add_flag("--no-canonical", no_canonical, "no node-permutation canonical forms");
  solve_cmd->add_flag("--replay", do_replay, "replay the certificate against every opponent move");
  solve_cmd->add_option("--expect", expect, "forall or exists; exit 1 if the winner differs");

  auto* script_cmd = app.add_subcommand("verify-script", "play forall's cone script against every exists answer");
  add_spec_options(script_cmd, spec_args);
  int script_rounds = 7;
  script_cmd->add_option("--rounds", script_rounds, "rounds, the opening included")->capture_default_str();
  script_cmd->add_option("--cert", cert_path, "write the certificate here");

  auto* blow = app.add_subcommand("blowup", "split every red into copies and check the lift is an embedding");
  add_spec_options(blow, spec_args);
  int blow_copies = 3;
  std::size_t blow_samples = 200;
  blow->add_option("--split", blow_copies, "copies per red in the split structure")->capture_default_str();
  blow->add_option("--samples", blow_samples, "seeded element samples")->capture_default_str();
  blow->add_option("--report", report_path, "report file (default stdout)");

  auto* play = app.add_subcommand("play", "play against the engine in the terminal");
  add_spec_options(play, spec_args);
  std::string side = "exists", transcript_path, replay_path;
  int play_rounds = 7;
  play->add_option("--side", side, "the side you play: exists or forall")->capture_default_str();
  play->add_option("--rounds", play_rounds, "rounds, the opening included")->capture_default_str();
  play->add_option("--cert", cert_path, "engine follows this certificate");
  play->add_option("--transcript", transcript_path, "write the transcript here");
  play->add_option("--replay", replay_path, "re-check a saved transcript instead of playing");

  auto* dot = app.add_subcommand("export-dot", "write a coloured graph as Graphviz DOT");
  add_spec_options(dot, spec_args);
  std::optional<std::size_t> atom_id;
  std::string graph_path;
  bool opening = false;
  dot->add_option("--atom", atom_id, "atom id");
  dot->add_option("--graph", graph_path, "graph JSON file");
  dot->add_flag("--script-opening", opening, "the 0-cone opening of the cone script");
  dot->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kInput;
  }

  try {
    const RainbowSpec spec = load_spec(spec_args);
    auto structure = [&]() { return enumerate_atoms(spec); };

    if (*build) {
      AtomStructure s = structure();
      json j = to_json(s, with_atoms);
      j["spec_hash"] = spec_hash(spec);
      j["version"] = kFormatVersion;
      write_json(out_path, j);
      return kPass;
    }

    if (*axioms) {
      AtomStructure s = structure();
      CheckReport rep = verify_ca_axioms(s, samples, seed);
      write_json(report_path, report_json("axioms", spec, seed, to_json(rep)));
      return rep.pass() ? kPass : kClaimFailed;
    }

    if (*solve_cmd) {
      GameConfig cfg = parse_game(game_args);
      cfg.canonical = !no_canonical;
      AtomStructure s = structure();
      Certificate cert = solve(s, cfg, SolveLimits{budget, 0});
      json summary{{"winner", to_string(cert.winner)}, {"rounds", cfg.rounds}, {"stats", to_json(cert.stats)}};
      if (!cert.note.empty()) summary["note"] = cert.note;
      int code = kPass;
      if (cert.winner == Winner::Undecided) code = kBudget;
      if (do_replay && cert.winner != Winner::Undecided) {
        ReplayResult r = replay_certificate(cert, s);
        summary["replay"] = json{{"ok", r.ok}, {"positions", r.positions}, {"failure", r.failure}};
        if (!r.ok) code = kClaimFailed;
      }
      if (!expect.empty() && code == kPass && expect != to_string(cert.winner)) code = kClaimFailed;
      if (!cert_path.empty()) write_json(cert_path, to_json(cert));
      std::cout << report_json("solve", spec, seed, summary).dump(2) << "\n";
      return code;
    }

    if (*script_cmd) {
      AtomStructure s = structure();
      Certificate cert = verify_scripted(s, script_rounds);
      json summary{{"winner", to_string(cert.winner)}, {"rounds", script_rounds}, {"stats", to_json(cert.stats)}};
      int code = kPass;
      if (cert.winner == Winner::Forall) {
        ReplayResult r = replay_certificate(cert, s);
        summary["replay"] = json{{"ok", r.ok}, {"positions", r.positions}, {"failure", r.failure}};
        if (!r.ok) code = kClaimFailed;
      } else {
        ReplayResult r = check_refutation(cert, s);
        summary["note"] = cert.note;
        summary["refutation_checked"] = r.ok;
        code = kClaimFailed;  // the script was expected to win
      }
      if (!cert_path.empty()) write_json(cert_path, to_json(cert));
      std::cout << report_json("verify-script", spec, seed, summary).dump(2) << "\n";
      return code;
    }

    if (*blow) {
      AtomStructure base = structure();
      RainbowSpec sspec = split_spec(spec, blow_copies);
      AtomStructure split = enumerate_atoms(sspec);
      SplitMap m = build_split_map(base, split);
      CheckReport rep = verify_blowup(base, split, m, blow_samples, seed);
      json body = to_json(rep);
      body["split_spec"] = to_json(sspec);
      body["base_atoms"] = base.size();
      body["split_atoms"] = split.size();
      write_json(report_path, report_json("blowup", spec, seed, body));
      return rep.pass() ? kPass : kClaimFailed;
    }

    if (*play) {
      AtomStructure s = structure();
      if (!replay_path.empty()) {
        Transcript t = transcript_from_json(read_json(replay_path), s.signature());
        TranscriptCheck c = replay_transcript(s, t);
        std::cout << "replay " << (c.ok ? "ok" : "failed") << ", outcome " << to_string(c.outcome);
        if (!c.ok) std::cout << ": " << c.failure;
        std::cout << "\n";
        return c.ok ? kPass : kClaimFailed;
      }
      if (side != "exists" && side != "forall") throw InputError("--side must be exists or forall");
      std::optional<Certificate> cert;
      if (!cert_path.empty()) cert = certificate_from_json(read_json(cert_path), s.signature());
      Transcript t = play_interactive(s, play_rounds, side == "forall" ? Side::Forall : Side::Exists, std::cin,
                                      std::cout, cert ? &*cert : nullptr);
      if (!transcript_path.empty()) write_json(transcript_path, to_json(t));
      return kPass;
    }

    if (*dot) {
      ColouredGraph g;
      std::shared_ptr<const Signature> sig = Signature::make(spec);
      std::optional<AtomStructure> s;
      if (atom_id) {
        s = structure();
        if (*atom_id >= s->size()) throw InputError("atom id out of range");
        g = s->atom(static_cast<AtomId>(*atom_id)).graph;
      } else if (!graph_path.empty()) {
        g = graph_from_json(read_json(graph_path), *sig);
      } else if (opening) {
        g = script_opening(*sig);
      } else {
        throw InputError("give --atom, --graph or --script-opening");
      }
      std::string text = to_dot(g);
      if (out_path.empty() || out_path == "-") {
        std::cout << text;
      } else {
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot write " + out_path);
        out << text;
      }
      return kPass;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const SpecError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const LabelError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const ResourceExhausted& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  }
  return kPass;
}
