use std::io::{BufRead, Write};

use anyhow::{bail, Result};
use robber_core::solver::{expand, BeliefState, GameRules, Variant};
use robber_core::strategies::CopStrategy;
use robber_core::{Graph, Vertex};

/// Terminal session where the user moves the robber. Returns the exit
/// code: 0 if the cop locates the robber, 1 if the user quits first.
pub fn run(
    g: &Graph,
    mut cop: Box<dyn CopStrategy>,
    rules: &GameRules,
    mut input: impl BufRead,
    mut out: impl Write,
) -> Result<u8> {
    writeln!(out, "{} vertices; cop `{}` probes up to {} per turn.", g.vertex_count(), cop.name(), rules.k)?;
    let all: Vec<Vertex> = g.vertices().collect();
    let Some(mut pos) = ask(g, &mut input, &mut out, "Pick a starting vertex", &all)? else {
        return concede(&mut out);
    };
    let mut belief = BeliefState::initial(g);
    for turn in 1.. {
        let probes = cop.next_probes()?;
        if probes.is_empty() || probes.len() > rules.k || probes.iter().any(|&p| p >= g.vertex_count()) {
            bail!("cop `{}` produced an invalid probe set", cop.name());
        }
        let distances: Vec<u32> = probes.iter().map(|&p| g.dist(p, pos)).collect();
        let names: Vec<&str> = probes.iter().map(|&p| g.label(p)).collect();
        writeln!(out, "Turn {turn}: cop probes {} -> distances {distances:?}", names.join(" "))?;
        let class = g.set_of(
            belief.candidates().iter().filter(|&x| probes.iter().zip(&distances).all(|(&p, &d)| g.dist(p, x) == d)),
        );
        if class.len() == 1 {
            writeln!(out, "Cop wins: robber located at {} on turn {turn}.", g.label(pos))?;
            return Ok(0);
        }
        writeln!(out, "The cop has {} candidates left.", class.len())?;
        cop.observe(&distances)?;
        belief = expand(g, &BeliefState::new(class)?, rules, &probes);
        let mut moves = vec![pos];
        moves.extend(
            g.neighbors(pos).iter().copied().filter(|v| rules.variant == Variant::FreeMove || !probes.contains(v)),
        );
        moves.sort_unstable();
        let prompt = format!("You are at {}. Move to", g.label(pos));
        match ask(g, &mut input, &mut out, &prompt, &moves)? {
            Some(v) => pos = v,
            None => return concede(&mut out),
        }
    }
    unreachable!("the turn loop only ends by returning")
}

fn concede(out: &mut impl Write) -> Result<u8> {
    writeln!(out, "You quit; the cop concedes.")?;
    Ok(1)
}

/// Prompts until the user names one of `allowed`; `None` on `quit` or end
/// of input.
fn ask(
    g: &Graph,
    input: &mut impl BufRead,
    out: &mut impl Write,
    prompt: &str,
    allowed: &[Vertex],
) -> Result<Option<Vertex>> {
    let options: Vec<&str> = allowed.iter().map(|&v| g.label(v)).collect();
    loop {
        write!(out, "{prompt} [{}] (or quit): ", options.join(" "))?;
        out.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            return Ok(None);
        }
        let word = line.trim();
        if word == "quit" {
            return Ok(None);
        }
        match g.vertex_by_label(word) {
            Some(v) if allowed.contains(&v) => return Ok(Some(v)),
            _ => writeln!(out, "Illegal move `{word}`.")?,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use robber_core::families::cycle;
    use robber_core::solver::{is_k_locatable, Budget};
    use robber_core::strategies::{extracted_cop, fixed_probe_cop};

    fn session(k: usize, cop: Box<dyn CopStrategy>, script: &str) -> (u8, String) {
        let c3 = cycle(3).unwrap();
        let mut out = Vec::new();
        let code = run(&c3, cop, &GameRules::new(k), script.as_bytes(), &mut out).unwrap();
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn two_probes_win_on_triangle_at_once() {
        let c3 = cycle(3).unwrap();
        for start in ["v0", "v1", "v2"] {
            let tree = is_k_locatable(&c3, &GameRules::new(2), &Budget::default()).unwrap().strategy.unwrap();
            let (code, text) = session(2, Box::new(extracted_cop(tree)), &format!("{start}\n"));
            assert_eq!(code, 0);
            assert!(text.contains(&format!("located at {start} on turn 1")), "{text}");
        }
    }

    #[test]
    fn one_probe_never_catches_a_careful_robber() {
        let script = "v1\n".to_string() + &"v2\nv1\n".repeat(20) + "quit\n";
        let (code, text) = session(1, Box::new(fixed_probe_cop(vec![0])), &script);
        assert_eq!(code, 1);
        assert!(text.contains("Turn 41"));
        assert!(text.ends_with("the cop concedes.\n"));
    }

    #[test]
    fn illegal_moves_are_reprompted() {
        let (code, text) = session(1, Box::new(fixed_probe_cop(vec![0])), "v1\nnowhere\nv2\n");
        assert_eq!(code, 1);
        assert!(text.contains("Illegal move `nowhere`."));
        assert_eq!(text.matches("Turn 1:").count(), 1);
        assert!(text.contains("Turn 2:"));
    }
}
