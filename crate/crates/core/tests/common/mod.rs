#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use bergdim::cli::CurveFile;
use bergdim::dichotomy::Ambient;
use bergdim::puiseux::CurveModel;

pub struct CorpusCurve {
    pub name: String,
    pub ambient: Ambient,
    pub model: CurveModel,
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("testdata/curves")
}

/// Every curve under `testdata/curves`, sorted by file name.
pub fn corpus() -> &'static [CorpusCurve] {
    static CORPUS: OnceLock<Vec<CorpusCurve>> = OnceLock::new();
    CORPUS.get_or_init(load)
}

fn load() -> Vec<CorpusCurve> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let file = CurveFile::load(&p).unwrap();
            CorpusCurve {
                name: p.file_stem().unwrap().to_string_lossy().into_owned(),
                ambient: file.ambient,
                model: file
                    .build()
                    .unwrap_or_else(|e| panic!("{}: {e}", p.display())),
            }
        })
        .collect()
}
