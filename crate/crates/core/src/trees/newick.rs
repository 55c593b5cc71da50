//! Newick dialect: bare leaf labels, unnamed internal nodes with exactly two
//! children, no branch lengths, terminated by `;`. Whitespace between tokens
//! is ignored. Parsing and printing use explicit stacks so deep caterpillars
//! do not exhaust the call stack.

use std::collections::HashSet;

use super::{Node, PhyloTree, TreeError};

fn is_delimiter(c: char) -> bool {
    matches!(c, '(' | ')' | ',' | ';' | ':' | '[' | ']' | '\'' | '"') || c.is_whitespace()
}

enum Expect {
    Subtree,
    AfterSubtree,
}

pub fn parse_newick(text: &str) -> Result<PhyloTree, TreeError> {
    let mut nodes: Vec<Node> = Vec::new();
    // Open '(' frames: byte position and children seen so far.
    let mut open: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut seen = HashSet::new();
    let mut expect = Expect::Subtree;
    let mut root = None;
    let mut it = text.char_indices().peekable();

    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if let Some(root) = root {
            if c == ';' {
                it.next();
                while let Some(&(p, c)) = it.peek() {
                    if !c.is_whitespace() {
                        return Err(TreeError::Syntax {
                            pos: p,
                            msg: "trailing input after ';'".into(),
                        });
                    }
                    it.next();
                }
                return Ok(PhyloTree::from_nodes(nodes, root));
            }
            return Err(TreeError::Syntax {
                pos,
                msg: format!("expected ';', found {c:?}"),
            });
        }
        let completed = match expect {
            Expect::Subtree => {
                if c == '(' {
                    it.next();
                    open.push((pos, Vec::with_capacity(2)));
                    continue;
                }
                if is_delimiter(c) {
                    return Err(TreeError::Syntax {
                        pos,
                        msg: format!("expected '(' or a label, found {c:?}"),
                    });
                }
                let mut end = pos;
                while let Some(&(p, c)) = it.peek() {
                    if is_delimiter(c) {
                        break;
                    }
                    end = p + c.len_utf8();
                    it.next();
                }
                let label = &text[pos..end];
                if !seen.insert(label) {
                    return Err(TreeError::DuplicateLabel(label.to_string()));
                }
                nodes.push(Node {
                    parent: None,
                    children: None,
                    label: Some(label.to_string()),
                });
                nodes.len() - 1
            }
            Expect::AfterSubtree => match c {
                ',' => {
                    it.next();
                    let (_, kids) = open.last().expect("AfterSubtree implies an open frame");
                    if kids.len() >= 2 {
                        return Err(TreeError::NonBinary { pos });
                    }
                    expect = Expect::Subtree;
                    continue;
                }
                ')' => {
                    it.next();
                    let (start, kids) = open.pop().expect("AfterSubtree implies an open frame");
                    let [l, r] = kids[..] else {
                        return Err(TreeError::NonBinary { pos: start });
                    };
                    nodes.push(Node {
                        parent: None,
                        children: Some([l, r]),
                        label: None,
                    });
                    let id = nodes.len() - 1;
                    nodes[l].parent = Some(id);
                    nodes[r].parent = Some(id);
                    id
                }
                _ => {
                    return Err(TreeError::Syntax {
                        pos,
                        msg: format!("expected ',' or ')', found {c:?}"),
                    })
                }
            },
        };
        match open.last_mut() {
            Some((_, kids)) => {
                kids.push(completed);
                expect = Expect::AfterSubtree;
            }
            None => root = Some(completed),
        }
    }
    Err(TreeError::Syntax {
        pos: text.len(),
        msg: "unexpected end of input".into(),
    })
}

pub fn to_newick(t: &PhyloTree) -> String {
    enum Step {
        Enter(usize),
        Comma,
        Close,
    }
    let mut out = String::new();
    let mut stack = vec![Step::Enter(t.root)];
    while let Some(step) = stack.pop() {
        match step {
            Step::Enter(id) => {
                let node = &t.nodes[id];
                match node.children {
                    Some([l, r]) => {
                        out.push('(');
                        stack.extend([Step::Close, Step::Enter(r), Step::Comma, Step::Enter(l)]);
                    }
                    None => out.push_str(node.label.as_deref().unwrap_or_default()),
                }
            }
            Step::Comma => out.push(','),
            Step::Close => out.push(')'),
        }
    }
    out.push(';');
    out
}
