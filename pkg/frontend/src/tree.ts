/** Parser and view model for the service's bracketed parse trees.
 *
 * Input looks like `(S (NP (DET "A") (NOUN "system")) ...)`: every node is a
 * parenthesised label followed by children, and leaves hold a quoted surface.
 */

export interface TreeNode {
  label: string;
  leaf: string | null;
  children: TreeNode[];
}

type BracketToken =
  | { kind: "open" }
  | { kind: "close" }
  | { kind: "string"; text: string }
  | { kind: "atom"; text: string };

function tokenizeBrackets(text: string): BracketToken[] {
  const tokens: BracketToken[] = [];
  let i = 0;
  while (i < text.length) {
    const ch = text[i];
    if (ch === "(") {
      tokens.push({ kind: "open" });
      i += 1;
    } else if (ch === ")") {
      tokens.push({ kind: "close" });
      i += 1;
    } else if (ch === '"') {
      let out = "";
      i += 1;
      while (i < text.length && text[i] !== '"') {
        if (text[i] === "\\" && i + 1 < text.length) {
          out += text[i + 1];
          i += 2;
        } else {
          out += text[i];
          i += 1;
        }
      }
      if (i >= text.length) throw new Error("malformed tree: unterminated string");
      tokens.push({ kind: "string", text: out });
      i += 1;
    } else if (ch === " " || ch === "\t" || ch === "\n") {
      i += 1;
    } else {
      let out = "";
      while (i < text.length && !'() "\t\n'.includes(text[i])) {
        out += text[i];
        i += 1;
      }
      tokens.push({ kind: "atom", text: out });
    }
  }
  return tokens;
}

export function parseBracketTree(text: string): TreeNode {
  const tokens = tokenizeBrackets(text);
  let pos = 0;

  function parseNode(): TreeNode {
    const open = tokens[pos];
    if (!open || open.kind !== "open") throw new Error("malformed tree: expected '('");
    pos += 1;
    const labelToken = tokens[pos];
    if (!labelToken || labelToken.kind !== "atom") {
      throw new Error("malformed tree: expected a node label");
    }
    pos += 1;
    const node: TreeNode = { label: labelToken.text, leaf: null, children: [] };
    while (pos < tokens.length && tokens[pos].kind !== "close") {
      const token = tokens[pos];
      if (token.kind === "string") {
        node.leaf = token.text;
        pos += 1;
      } else if (token.kind === "open") {
        node.children.push(parseNode());
      } else {
        throw new Error(`malformed tree: unexpected token in ${node.label}`);
      }
    }
    if (pos >= tokens.length) throw new Error("malformed tree: missing ')'");
    pos += 1;
    return node;
  }

  const root = parseNode();
  if (pos !== tokens.length) throw new Error("malformed tree: trailing input");
  return root;
}

export interface TreeLine {
  /** Stable path id ("0", "0.1", ...) used for collapse toggling. */
  id: string;
  depth: number;
  label: string;
  leaf: string | null;
  hasChildren: boolean;
  collapsed: boolean;
}

/** Flatten a tree to indented lines, hiding the subtrees of collapsed ids. */
export function treeLines(root: TreeNode, collapsed: ReadonlySet<string>): TreeLine[] {
  const lines: TreeLine[] = [];

  function walk(node: TreeNode, id: string, depth: number): void {
    const isCollapsed = collapsed.has(id);
    lines.push({
      id,
      depth,
      label: node.label,
      leaf: node.leaf,
      hasChildren: node.children.length > 0,
      collapsed: isCollapsed,
    });
    if (isCollapsed) return;
    node.children.forEach((child, i) => walk(child, `${id}.${i}`, depth + 1));
  }

  walk(root, "0", 0);
  return lines;
}
