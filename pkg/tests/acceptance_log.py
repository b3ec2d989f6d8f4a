RESULTS = {}


def record(key, label, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] {key} {label}" + (f" ({detail})" if detail else "")
    RESULTS[key] = line
    print(line)
