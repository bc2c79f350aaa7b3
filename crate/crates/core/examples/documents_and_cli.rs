// Write documents, then drive the command-line pipeline in-process.

use grpd::cli;
use grpd::doc::{Document, GroupoidDocument, HomDocument};
use grpd::families;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let p5 = families::pair(5)?;
    let grpd_path = dir.path().join("p5.grpd.json");
    let theta_path = dir.path().join("p5.theta.json");
    std::fs::write(&grpd_path, Document::Groupoid(GroupoidDocument::from_groupoid(&p5.groupoid)).to_json())?;
    std::fs::write(&theta_path, Document::Hom(HomDocument::from_values(&p5.groupoid, &p5.homs[0])).to_json())?;
    let (grpd_arg, theta_arg) = (grpd_path.to_str().ok_or("path")?, theta_path.to_str().ok_or("path")?);

    let out = cli::run(["grpd", "validate", grpd_arg]);
    print!("{}", out.stdout);

    let out = cli::run(["grpd", "congruence", grpd_arg, "--hom", theta_arg, "--profile"]);
    print!("{}", out.stdout);
    println!("exit code {}", out.code);

    let out = cli::run(["grpd", "report", "--all", grpd_arg, "--thetas", theta_arg, "--format", "json"]);
    let json: serde_json::Value = serde_json::from_str(&out.stdout)?;
    println!("report --all: {} ({} checks)", json["status"], json["checks"].as_array().map_or(0, Vec::len));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
