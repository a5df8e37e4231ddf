// gridlock: wired-table extraction from PDFs and page images.
//
// Subcommands:
//   extract   inputs -> per-page HTML/CSV/JSON table files
//   evaluate  predicted vs ground-truth table directories
//   synth     deterministic synthetic table corpus
//   pif-dump  print the intermediate page model as JSON

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gridlock/config.hpp"
#include "gridlock/emit.hpp"
#include "gridlock/errors.hpp"
#include "gridlock/metrics.hpp"
#include "gridlock/page_model.hpp"
#include "gridlock/pdf_frontend.hpp"
#include "gridlock/pipeline.hpp"
#include "gridlock/synth.hpp"

namespace fs = std::filesystem;
using namespace gridlock;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::string lower_ext(const fs::path& p) {
  std::string e = p.extension().string();
  std::transform(e.begin(), e.end(), e.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return e;
}

bool is_input_file(const fs::path& p) {
  std::string e = lower_ext(p);
  return e == ".pdf" || e == ".png" || e == ".pgm" || e == ".pif";
}

// One unit of work: a single page of a single input file.
struct PageJob {
  fs::path input;
  std::string stem;
  int page = 0;
  bool from_pdf = false;
};

struct PageResult {
  bool ok = false;
  std::string error;
  std::string bytes;   // formatted output
  int n_tables = 0;
  int n_warnings = 0;
};

struct ExtractOptions {
  Config cfg;
  std::string format = "html";
  bool deskew = true;
};

std::string escape_html_text(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string format_page(const PageOutput& page, const std::string& format,
                        int* n_tables) {
  if (format == "json") {
    DocumentOutput doc;
    doc.pages.push_back(page);
    for (const PdfCell& c : page.cells)
      if (c.kind == CellKind::Table) ++*n_tables;
    return document_to_json(doc);
  }
  std::string out;
  for (const PdfCell& c : page.cells) {
    if (c.kind == CellKind::Table) {
      ++*n_tables;
      const auto& t = std::get<TableStructure>(c.content);
      out += format == "html" ? table_to_html(t) : table_to_csv(t);
      out += format == "html" ? "\n" : "\r\n";
    } else if (c.kind == CellKind::Text && format == "html") {
      out += "<p>" + escape_html_text(std::get<Paragraph>(c.content).text) + "</p>\n";
    }
  }
  return out;
}

PageResult run_page_job(const PageJob& job, const ExtractOptions& opts,
                        const PdfDocument* doc) {
  PageResult res;
  try {
    PageGraphics pif;
    std::string ext = lower_ext(job.input);
    if (job.from_pdf) {
      pif = doc->extract_page(job.page, nullptr, opts.cfg.thin_rule_max);
    } else if (ext == ".png" || ext == ".pgm") {
      RasterPage img = load_image(job.input.string(), opts.cfg.dpi);
      pif = raster_to_graphics(img, opts.cfg, opts.deskew);
    } else {
      pif = pif_load(read_file(job.input));
    }
    pif.page_index = job.page;
    PageOutput page = analyze_page(pif, opts.cfg);
    res.n_warnings = static_cast<int>(page.warnings.size());
    res.bytes = format_page(page, opts.format, &res.n_tables);
    res.ok = true;
  } catch (const std::exception& e) {
    res.error = e.what();
  }
  return res;
}

int cmd_extract(const std::vector<std::string>& inputs, const std::string& out_dir,
                ExtractOptions opts, int jobs) {
  std::vector<fs::path> files;
  for (const std::string& in : inputs) {
    fs::path p(in);
    if (fs::is_directory(p)) {
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && is_input_file(e.path())) files.push_back(e.path());
    } else if (fs::exists(p)) {
      files.push_back(p);
    } else {
      std::cerr << "error: no such input: " << in << "\n";
      return 2;
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "error: no inputs\n";
    return 2;
  }
  fs::create_directories(out_dir);

  // Expand multi-page PDFs into page jobs; keep documents open for reuse.
  std::vector<PageJob> queue;
  std::map<std::string, PdfDocument> docs;
  bool any_failed = false;
  for (const fs::path& f : files) {
    if (lower_ext(f) == ".pdf") {
      try {
        PdfDocument doc = open_pdf(read_file(f));
        int n = doc.page_count();
        docs.emplace(f.string(), std::move(doc));
        for (int p = 0; p < n; ++p)
          queue.push_back({f, f.stem().string(), p, true});
      } catch (const std::exception& e) {
        std::cerr << "error: " << f.string() << ": " << e.what() << "\n";
        any_failed = true;
      }
    } else {
      queue.push_back({f, f.stem().string(), 0, false});
    }
  }

  std::vector<PageResult> results(queue.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= queue.size()) return;
      const PageJob& job = queue[i];
      const PdfDocument* doc =
          job.from_pdf ? &docs.at(job.input.string()) : nullptr;
      results[i] = run_page_job(job, opts, doc);
    }
  };
  int n_workers = std::max(1, std::min<int>(jobs, static_cast<int>(queue.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n_workers; ++i) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  // Results written in queue (page) order regardless of worker scheduling.
  std::string ext = opts.format == "html" ? ".html" : opts.format == "csv" ? ".csv" : ".json";
  int n_pages = 0, n_tables = 0, n_warnings = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const PageJob& job = queue[i];
    const PageResult& res = results[i];
    if (!res.ok) {
      std::cerr << "error: " << job.input.string() << " page " << job.page << ": "
                << res.error << "\n";
      any_failed = true;
      continue;
    }
    fs::path out = fs::path(out_dir) /
                   (job.stem + ".page" + std::to_string(job.page) + ext);
    write_file(out, res.bytes);
    ++n_pages;
    n_tables += res.n_tables;
    n_warnings += res.n_warnings;
  }
  std::cout << "pages=" << n_pages << " tables=" << n_tables
            << " warnings=" << n_warnings << "\n";
  return any_failed ? 1 : 0;
}

std::map<std::string, fs::path> html_files_by_stem(const std::string& dir) {
  std::map<std::string, fs::path> out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && lower_ext(e.path()) == ".html")
      out[e.path().stem().string()] = e.path();
  return out;
}

int cmd_evaluate(const std::string& pred_dir, const std::string& gt_dir,
                 const std::string& metric, bool allow_missing, double iou_thresh,
                 const std::string& report_path) {
  if (!fs::is_directory(pred_dir) || !fs::is_directory(gt_dir)) {
    std::cerr << "error: evaluate needs two directories\n";
    return 2;
  }
  auto preds = html_files_by_stem(pred_dir);
  auto gts = html_files_by_stem(gt_dir);
  if (gts.empty()) {
    std::cerr << "error: ground-truth directory has no .html files\n";
    return 2;
  }

  bool missing = false;
  for (const auto& [stem, path] : preds)
    if (!gts.count(stem)) {
      std::cerr << "unmatched prediction: " << path.string() << "\n";
      missing = true;
    }
  for (const auto& [stem, path] : gts)
    if (!preds.count(stem)) {
      std::cerr << "unmatched ground truth: " << path.string() << "\n";
      missing = true;
    }
  if (missing && !allow_missing) return 1;

  EvalReport total;
  std::vector<std::pair<std::string, double>> teds_items, struct_items;
  bool want_prf = metric == "prf" || metric == "all";
  bool want_teds = metric == "teds" || metric == "all";
  bool want_struct = metric == "teds-struct" || metric == "all";
  int n_pairs = 0;
  for (const auto& [stem, gpath] : gts) {
    auto it = preds.find(stem);
    if (it == preds.end()) continue;
    TableTree pt, gt;
    try {
      pt = parse_table_html(read_file(it->second));
      gt = parse_table_html(read_file(gpath));
    } catch (const ParseError& e) {
      std::cerr << "error: " << stem << ": " << e.what() << "\n";
      return 1;
    }
    ++n_pairs;
    if (want_prf) {
      EvalReport r = table_prf({tree_to_structure(pt)}, {tree_to_structure(gt)},
                               iou_thresh);
      total.n_pred += r.n_pred;
      total.n_gt += r.n_gt;
      total.n_matched += r.n_matched;
      total.n_correct += r.n_correct;
      total.cell_pred += r.cell_pred;
      total.cell_gt += r.cell_gt;
      total.cell_correct += r.cell_correct;
    }
    if (want_teds) teds_items.emplace_back(stem, teds(pt, gt));
    if (want_struct) struct_items.emplace_back(stem, teds_struct(pt, gt));
  }
  total.precision = total.n_pred ? static_cast<double>(total.n_correct) / total.n_pred : 0;
  total.recall = total.n_gt ? static_cast<double>(total.n_correct) / total.n_gt : 0;
  total.f1 = total.precision + total.recall > 0
                 ? 2 * total.precision * total.recall / (total.precision + total.recall)
                 : 0;
  total.cell_precision =
      total.cell_pred ? static_cast<double>(total.cell_correct) / total.cell_pred : 0;
  total.cell_recall =
      total.cell_gt ? static_cast<double>(total.cell_correct) / total.cell_gt : 0;

  auto mean = [](const std::vector<std::pair<std::string, double>>& v) {
    double s = 0;
    for (const auto& [_, x] : v) s += x;
    return v.empty() ? 0 : s / static_cast<double>(v.size());
  };

  std::cout << "pairs evaluated: " << n_pairs << "\n";
  if (want_prf) {
    std::printf("table  P=%.4f R=%.4f F1=%.4f (%d/%d correct)\n", total.precision,
                total.recall, total.f1, total.n_correct, total.n_gt);
    std::printf("cell   P=%.4f R=%.4f\n", total.cell_precision, total.cell_recall);
  }
  if (want_teds) std::printf("teds         mean=%.4f\n", mean(teds_items));
  if (want_struct) std::printf("teds-struct  mean=%.4f\n", mean(struct_items));

  if (!report_path.empty()) {
    nlohmann::ordered_json j;
    j["pairs"] = n_pairs;
    if (want_prf) {
      j["table"] = {{"precision", total.precision},
                    {"recall", total.recall},
                    {"f1", total.f1},
                    {"n_pred", total.n_pred},
                    {"n_gt", total.n_gt},
                    {"n_correct", total.n_correct}};
      j["cell"] = {{"precision", total.cell_precision},
                   {"recall", total.cell_recall}};
    }
    auto dump_items = [](const std::vector<std::pair<std::string, double>>& v) {
      nlohmann::ordered_json o = nlohmann::ordered_json::object();
      for (const auto& [stem, x] : v) o[stem] = x;
      return o;
    };
    if (want_teds) {
      j["teds_mean"] = mean(teds_items);
      j["teds"] = dump_items(teds_items);
    }
    if (want_struct) {
      j["teds_struct_mean"] = mean(struct_items);
      j["teds_struct"] = dump_items(struct_items);
    }
    write_file(report_path, j.dump(2) + "\n");
  }
  return missing && !allow_missing ? 1 : 0;
}

int cmd_synth(const std::string& out_dir, int count, std::uint64_t seed,
              SynthParams base) {
  fs::create_directories(out_dir);
  for (int i = 0; i < count; ++i) {
    SynthParams p = base;
    p.seed = seed + static_cast<std::uint64_t>(i);
    SynthItem item = gen_table(p);
    char name[32];
    std::snprintf(name, sizeof(name), "synth_%04llu",
                  static_cast<unsigned long long>(p.seed));
    fs::path base_path = fs::path(out_dir) / name;
    write_file(base_path.string() + ".pif", pif_save(item.page));
    save_pgm(item.raster, base_path.string() + ".pgm");
    write_file(base_path.string() + ".html", table_to_html(item.ground_truth) + "\n");
  }
  std::cout << "wrote " << count << " item(s) to " << out_dir << "\n";
  return 0;
}

int cmd_pif_dump(const std::string& input, int page, const Config& cfg, bool deskew) {
  fs::path p(input);
  std::string ext = lower_ext(p);
  PageGraphics pif;
  if (ext == ".pdf") {
    PdfDocument doc = open_pdf(read_file(p));
    if (page < 0 || page >= doc.page_count())
      throw ConfigError("page index out of range: " + std::to_string(page));
    pif = doc.extract_page(page, nullptr, cfg.thin_rule_max);
  } else if (ext == ".png" || ext == ".pgm") {
    if (page != 0) throw ConfigError("images have a single page");
    RasterPage img = load_image(p.string(), cfg.dpi);
    pif = raster_to_graphics(img, cfg, deskew);
  } else {
    if (page != 0) throw ConfigError("PIF files hold a single page");
    pif = pif_load(read_file(p));
  }
  pif.page_index = page;
  std::cout << pif_save(pif);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wired-table extraction and evaluation"};
  app.require_subcommand(1);

  // extract
  auto* ext = app.add_subcommand("extract", "extract tables from PDFs, images, or PIF");
  std::vector<std::string> inputs;
  std::string out_dir = ".", format = "html", config_path;
  int jobs = 1;
  double dpi = 0;
  bool no_deskew = false;
  ext->add_option("inputs", inputs, "input files or directories")->required();
  ext->add_option("--out", out_dir, "output directory (default .)");
  ext->add_option("--format", format, "html, csv, or json")
      ->check(CLI::IsMember({"html", "csv", "json"}));
  ext->add_option("--jobs", jobs, "worker threads (default 1)")
      ->check(CLI::PositiveNumber);
  ext->add_option("--dpi", dpi, "resolution of raster inputs (default 150)");
  ext->add_option("--config", config_path, "key=value config file");
  ext->add_flag("--no-deskew", no_deskew, "skip skew correction on raster inputs");

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "score predicted tables against ground truth");
  std::string pred_dir, gt_dir, metric = "all", report_path;
  bool allow_missing = false;
  double iou_thresh = 0.5;
  ev->add_option("pred_dir", pred_dir, "directory of predicted .html tables")->required();
  ev->add_option("gt_dir", gt_dir, "directory of ground-truth .html tables")->required();
  ev->add_option("--metric", metric, "teds, teds-struct, prf, or all")
      ->check(CLI::IsMember({"teds", "teds-struct", "prf", "all"}));
  ev->add_flag("--allow-missing", allow_missing, "unmatched stems are not an error");
  ev->add_option("--iou", iou_thresh, "table pairing IoU threshold (default 0.5)");
  ev->add_option("--report", report_path, "write the JSON report here");

  // synth
  auto* sy = app.add_subcommand("synth", "generate a synthetic wired-table corpus");
  std::string synth_out = ".";
  int count = 1;
  std::uint64_t seed = 0;
  SynthParams sp;
  bool no_text = false;
  sy->add_option("--out", synth_out, "output directory (default .)");
  sy->add_option("--count", count, "number of items (default 1)")->check(CLI::PositiveNumber);
  sy->add_option("--seed", seed, "seed of the first item (default 0)");
  sy->add_option("--max-rows", sp.max_rows, "max grid rows (default 12)");
  sy->add_option("--max-cols", sp.max_cols, "max grid columns (default 8)");
  sy->add_option("--merge-prob", sp.merge_prob, "span merge probability (default 0.3)");
  sy->add_option("--skew", sp.skew_deg, "raster skew in degrees (default 0)");
  sy->add_option("--dpi", sp.dpi, "raster resolution (default 150)");
  sy->add_option("--noise-sigma", sp.noise_sigma, "gaussian pixel noise (default 0)");
  sy->add_flag("--no-text", no_text, "omit placeholder cell text");

  // pif-dump
  auto* pd = app.add_subcommand("pif-dump", "print the page model as JSON");
  std::string dump_input;
  int dump_page = 0;
  std::string dump_config;
  double dump_dpi = 0;
  bool dump_no_deskew = false;
  pd->add_option("input", dump_input, "PDF, PNG/PGM, or PIF file")->required();
  pd->add_option("--page", dump_page, "page index (default 0)");
  pd->add_option("--config", dump_config, "key=value config file");
  pd->add_option("--dpi", dump_dpi, "resolution of raster inputs (default 150)");
  pd->add_flag("--no-deskew", dump_no_deskew, "skip skew correction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // --help exits 0, anything else is a usage error
  }

  try {
    if (app.got_subcommand(ext)) {
      ExtractOptions opts;
      if (!config_path.empty()) apply_config_file(opts.cfg, config_path);
      if (dpi > 0) opts.cfg.dpi = dpi;
      opts.format = format;
      opts.deskew = !no_deskew;
      return cmd_extract(inputs, out_dir, opts, jobs);
    }
    if (app.got_subcommand(ev))
      return cmd_evaluate(pred_dir, gt_dir, metric, allow_missing, iou_thresh,
                          report_path);
    if (app.got_subcommand(sy)) {
      sp.text_fill = !no_text;
      return cmd_synth(synth_out, count, seed, sp);
    }
    if (app.got_subcommand(pd)) {
      Config cfg;
      if (!dump_config.empty()) apply_config_file(cfg, dump_config);
      if (dump_dpi > 0) cfg.dpi = dump_dpi;
      return cmd_pif_dump(dump_input, dump_page, cfg, !dump_no_deskew);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
