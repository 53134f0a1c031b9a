// Display rounding lives here and nowhere else: two decimals for risk,
// matching the service's CSV convention. The service formats with
// round-half-even, while Number.toFixed rounds halves away from zero
// (6.625 -> "6.63"), so exact binary midpoints are resolved manually on
// the value's full decimal expansion.

function roundHalfEven(value: number, places: number): string {
  const s = value.toFixed(17); // enough digits to identify exact midpoints
  const dot = s.indexOf(".");
  const keep = s.slice(0, dot + 1 + places);
  const rest = s.slice(dot + 1 + places);
  let roundUp: boolean;
  if (rest[0] > "5" || (rest[0] === "5" && /[1-9]/.test(rest.slice(1)))) {
    roundUp = true;
  } else if (rest[0] < "5") {
    roundUp = false;
  } else {
    const lastDigit = keep.charCodeAt(keep.length - 1) - 48;
    roundUp = lastDigit % 2 === 1;
  }
  if (!roundUp) return keep;
  const scale = 10 ** places;
  const cents = Math.round(Number(keep) * scale) + 1;
  return (cents / scale).toFixed(places);
}

export function formatRisk(value: number): string {
  return roundHalfEven(value, 2);
}

export function formatScore(value: number): string {
  return roundHalfEven(value, 2);
}
